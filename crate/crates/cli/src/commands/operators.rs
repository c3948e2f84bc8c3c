use fracdim::altops::{apply_laplacian, LaplacianKind, LaplacianSpec};
use fracdim::battery::{sample_points, TestField, BATTERY};
use fracdim::diffops::{grad_alpha_at, laplace_beltrami_at, LameFrame};
use fracdim::measure::MultiIndex;
use fracdim::validate::{operator_zoo, vector_identities, Measurement};
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use super::{flag, positive, usage, Outcome};
use crate::args::OperatorsArgs;
use crate::config::resolve;
use crate::output::{Cell, Report, Table};
use crate::{CliError, Globals};

#[derive(Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub struct OperatorsParams {
    pub field: String,
    pub alphas: [f64; 3],
    pub points: usize,
    pub range: [f64; 2],
    pub at: Option<[f64; 3]>,
    pub verify: bool,
}

impl Default for OperatorsParams {
    fn default() -> Self {
        Self {
            field: "exp-sin".into(),
            alphas: [0.8, 0.9, 1.0],
            points: 5,
            range: [0.5, 2.0],
            at: None,
            verify: false,
        }
    }
}

pub fn run(args: &OperatorsArgs, config: &Map<String, Value>, g: &Globals) -> Result<Outcome, CliError> {
    let p: OperatorsParams = resolve(config, args)?;
    if p.verify {
        return verify(&p, g);
    }
    let field = TestField::by_name(&p.field).ok_or_else(|| {
        let names: Vec<&str> = BATTERY.iter().map(|t| t.name).collect();
        usage("field", format!("unknown field {:?}, expected one of {}", p.field, names.join(", ")))
    })?;
    let alphas = flag("alphas", MultiIndex::relaxed(p.alphas))?;
    let points = match p.at {
        Some(at) => vec![at],
        None => {
            let [lo, hi] = p.range;
            positive("range", lo)?;
            if !(hi > lo && hi.is_finite()) {
                return Err(usage("range", format!("need 0 < lo < hi, got {lo},{hi}")));
            }
            if p.points == 0 {
                return Err(usage("points", "must be at least 1"));
            }
            sample_points(p.points, lo, hi)
        }
    };
    let frame = LameFrame::new(alphas);
    let f = field.field();
    let specs = [LaplacianKind::News, LaplacianKind::PS, LaplacianKind::ZmnApprox, LaplacianKind::K2]
        .map(|k| LaplacianSpec::anisotropic(k, alphas).expect("finite parameters"));
    let mut table = Table::new(&[
        "x1", "x2", "x3", "f", "grad1", "grad2", "grad3", "news", "ps", "zmn", "k2", "laplace_beltrami",
    ]);
    for &at in &points {
        let grad = flag("at", grad_alpha_at(&f, &frame, at))?;
        let mut row: Vec<Cell> = at.iter().map(|&v| v.into()).collect();
        row.push(flag("at", f.eval(at))?.into());
        row.extend(grad.iter().map(|&v| Cell::from(v)));
        for spec in &specs {
            row.push(flag("at", apply_laplacian(spec, &f, at))?.into());
        }
        row.push(flag("at", laplace_beltrami_at(&f, &frame, at))?.into());
        table.push(row);
    }
    let mut report = Report::new("operators", &p);
    report.result("field", field.name);
    report.table("points", table);
    Ok(Outcome::ok(report))
}

/// The identity suite as pass/fail rows. `--tol` scales the tolerances.
fn verify(p: &OperatorsParams, g: &Globals) -> Result<Outcome, CliError> {
    let scale = g.tol.unwrap_or(1.0);
    let mut ms: Vec<Measurement> = vector_identities()?;
    ms.extend(operator_zoo()?);
    let ms: Vec<Measurement> = ms.into_iter().map(|m| m.scaled(scale)).collect();
    let mut report = Report::new("operators", p);
    report.tolerance("scale", scale);
    report.result("passed", ms.iter().all(|m| m.passed));
    report.table("identities", measurement_table(&ms));
    let failed: Vec<&str> = ms.iter().filter(|m| !m.passed).map(|m| m.name.as_str()).collect();
    let failure = (!failed.is_empty()).then(|| format!("identities failed: {}", failed.join("; ")));
    Ok(Outcome { report, failure })
}

pub(crate) fn measurement_table(ms: &[Measurement]) -> Table {
    let mut t = Table::new(&["topic", "name", "value", "tolerance", "kind", "passed"]);
    for m in ms {
        t.push(vec![
            m.topic.as_str().into(),
            m.name.as_str().into(),
            m.value.into(),
            m.tolerance.into(),
            if m.lower_bound { "min" } else { "max" }.into(),
            m.passed.into(),
        ]);
    }
    t
}
