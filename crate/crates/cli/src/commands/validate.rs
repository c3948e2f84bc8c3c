use fracdim::validate::{run_suite, SuiteOptions};
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use super::operators::measurement_table;
use super::{positive, Outcome};
use crate::args::ValidateArgs;
use crate::config::resolve;
use crate::output::Report;
use crate::{CliError, Globals};

#[derive(Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub struct ValidateParams {
    pub samples: usize,
    pub seed: u64,
    /// Multiplies every ceiling tolerance.
    pub tol_scale: f64,
}

impl Default for ValidateParams {
    fn default() -> Self {
        let o = SuiteOptions::default();
        Self {
            samples: o.mc_samples,
            seed: o.seed,
            tol_scale: o.tol_scale,
        }
    }
}

#[derive(Serialize)]
struct Flags<'a> {
    #[serde(flatten)]
    args: &'a ValidateArgs,
    #[serde(skip_serializing_if = "Option::is_none")]
    seed: Option<u64>,
    #[serde(rename = "tol-scale", skip_serializing_if = "Option::is_none")]
    tol_scale: Option<f64>,
}

pub fn run(args: &ValidateArgs, config: &Map<String, Value>, g: &Globals) -> Result<Outcome, CliError> {
    let flags = Flags {
        args,
        seed: g.seed,
        tol_scale: g.tol,
    };
    let p: ValidateParams = resolve(config, &flags)?;
    positive("tol", p.tol_scale)?;
    let options = SuiteOptions {
        seed: p.seed,
        mc_samples: p.samples,
        tol_scale: p.tol_scale,
    };
    let suite = run_suite(&options).map_err(|e| match e.is_validation() {
        true => super::usage("samples", e),
        false => CliError::Library(e),
    })?;
    let mut report = Report::new("validate", &p);
    report.tolerance("scale", p.tol_scale);
    report.result("checks", suite.measurements.len());
    report.result("failures", suite.failures().count());
    report.result("passed", suite.passed());
    report.table("measurements", measurement_table(&suite.measurements));
    let failure = (!suite.passed()).then(|| {
        let names: Vec<&str> = suite.failures().map(|m| m.name.as_str()).collect();
        format!("{} check(s) failed: {}", names.len(), names.join("; "))
    });
    Ok(Outcome { report, failure })
}
