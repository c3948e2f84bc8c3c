use fracdim::solvers::{
    max_difference, poisson_solve_analytic, poisson_solve_numeric, PoissonOperator, PoissonProblem, PoissonSolution,
};
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use super::{flag, usage, Outcome};
use crate::args::PoissonArgs;
use crate::config::resolve;
use crate::output::{Cell, Report, Table};
use crate::{CliError, Globals};

/// Default ceiling on the operator residual `max |Lφ − f|`.
const RESIDUAL_TOL: f64 = 1e-6;

#[derive(Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub struct PoissonParams {
    pub operator: String,
    pub alpha: f64,
    pub f: String,
    pub interval: [f64; 2],
    pub bc: [f64; 2],
    pub method: String,
    pub nodes: usize,
    pub samples: usize,
    pub residual_tol: f64,
}

impl Default for PoissonParams {
    fn default() -> Self {
        Self {
            operator: "news".into(),
            alpha: 0.8,
            f: "const".into(),
            interval: [0.1, 2.0],
            bc: [0.0, 1.0],
            method: "analytic".into(),
            nodes: 2001,
            samples: 101,
            residual_tol: RESIDUAL_TOL,
        }
    }
}

#[derive(Serialize)]
struct Flags<'a> {
    #[serde(flatten)]
    args: &'a PoissonArgs,
    #[serde(rename = "residual-tol", skip_serializing_if = "Option::is_none")]
    residual_tol: Option<f64>,
}

fn source(name: &str) -> Option<fn(f64) -> f64> {
    match name {
        "const" => Some(|_| 1.0),
        "linear" => Some(|x| x),
        "sin" => Some(f64::sin),
        _ => None,
    }
}

pub fn run(args: &PoissonArgs, config: &Map<String, Value>, g: &Globals) -> Result<Outcome, CliError> {
    let flags = Flags {
        args,
        residual_tol: g.tol,
    };
    let p: PoissonParams = resolve(config, &flags)?;
    let op = match p.operator.as_str() {
        "news" => PoissonOperator::News,
        "k2" => PoissonOperator::K2,
        other => return Err(usage("operator", format!("unknown operator {other:?}, expected news or k2"))),
    };
    let f = source(&p.f).ok_or_else(|| usage("f", format!("unknown source {:?}, expected const, linear or sin", p.f)))?;
    let (analytic, numeric) = match p.method.as_str() {
        "analytic" => (true, false),
        "numeric" => (false, true),
        "both" => (true, true),
        other => return Err(usage("method", format!("unknown method {other:?}, expected analytic, numeric or both"))),
    };
    if p.samples < 2 {
        return Err(usage("samples", "must be at least 2"));
    }
    let interval = (p.interval[0], p.interval[1]);
    if !(p.bc[0].is_finite() && p.bc[1].is_finite()) {
        return Err(usage("bc", "boundary values must be finite"));
    }
    let problem = match PoissonProblem::dirichlet(op, p.alpha, f, interval, (p.bc[0], p.bc[1])) {
        Err(e @ fracdim::Error::InvalidDimension(_)) => return Err(usage("alpha", e)),
        r => flag("interval", r)?,
    };

    let mut report = Report::new("poisson", &p);
    report.tolerance("residual", p.residual_tol);
    let mut solutions: Vec<(&str, PoissonSolution)> = Vec::new();
    if analytic {
        let s = poisson_solve_analytic(&problem)?;
        report.result(
            "analytic",
            json!({ "constants": [s.constants.0, s.constants.1], "residual_norm": s.residual_norm }),
        );
        solutions.push(("analytic", s));
    }
    if numeric {
        let s = flag("nodes", poisson_solve_numeric(&problem, p.nodes))?;
        report.result(
            "numeric",
            json!({ "residual_norm": s.residual_norm, "error_estimate": s.error_estimate }),
        );
        solutions.push(("numeric", s));
    }
    if let [(_, a), (_, b)] = solutions.as_slice() {
        report.result("max_difference", max_difference(a, b, p.samples));
    }
    let residual = solutions.iter().map(|(_, s)| s.residual_norm).fold(0.0, f64::max);
    report.result("residual_norm", residual);

    let mut header = vec!["x"];
    header.extend(solutions.iter().map(|(n, _)| *n));
    let mut table = Table::new(&header);
    for (x, v) in solutions[0].1.samples(p.samples) {
        let mut row = vec![Cell::from(x), Cell::from(v)];
        row.extend(solutions[1..].iter().map(|(_, s)| Cell::from(s.eval(x))));
        table.push(row);
    }
    report.table("samples", table);
    let failure = (residual > p.residual_tol)
        .then(|| format!("residual {residual:e} exceeds {:e}", p.residual_tol));
    Ok(Outcome { report, failure })
}
