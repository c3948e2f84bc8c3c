use fracdim::measure::{
    ball_volume, effective_coordinate, nids_weight, parallelepiped_mass, sphere_area, AxisDimension,
    EffectiveCoordinateMap, MultiIndex,
};
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use super::{flag, positive, usage, Outcome};
use crate::args::MeasureArgs;
use crate::config::resolve;
use crate::output::Report;
use crate::{CliError, Globals};

const QUANTITIES: [&str; 6] = ["ball-volume", "sphere-area", "effective-coordinate", "weight", "mass", "all"];

#[derive(Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub struct MeasureParams {
    pub alpha: f64,
    /// Per-axis dimensions for the mass; `[alpha; 3]` when absent.
    pub alphas: Option<[f64; 3]>,
    pub radius: f64,
    pub x: f64,
    pub edges: [f64; 3],
    pub rho0: f64,
    pub quantity: String,
}

impl Default for MeasureParams {
    fn default() -> Self {
        Self {
            alpha: 1.0,
            alphas: None,
            radius: 1.0,
            x: 1.0,
            edges: [1.0; 3],
            rho0: 1.0,
            quantity: "all".into(),
        }
    }
}

pub fn run(args: &MeasureArgs, config: &Map<String, Value>, _g: &Globals) -> Result<Outcome, CliError> {
    let p: MeasureParams = resolve(config, args)?;
    let q = p.quantity.as_str();
    if !QUANTITIES.contains(&q) {
        return Err(usage("quantity", format!("unknown quantity {q:?}, expected one of {}", QUANTITIES.join(", "))));
    }
    let alpha = flag("alpha", AxisDimension::new(p.alpha))?;
    let want = |name: &str| q == "all" || q == name;
    let mut report = Report::new("measure", &p);
    if want("ball-volume") {
        report.result("ball_volume", flag("radius", ball_volume(alpha, p.radius))?);
    }
    if want("sphere-area") {
        report.result("sphere_area", flag("radius", sphere_area(alpha, p.radius))?);
    }
    if want("effective-coordinate") {
        report.result("effective_coordinate_x", effective_coordinate(&EffectiveCoordinateMap::x(alpha), p.x));
        report.result("effective_coordinate_q", effective_coordinate(&EffectiveCoordinateMap::q(alpha), p.x));
    }
    if want("weight") {
        if p.x == 0.0 && p.alpha < 1.0 {
            return Err(usage("x", "weight is singular at x = 0 for alpha < 1"));
        }
        report.result("weight", nids_weight(p.alpha, p.x));
    }
    if want("mass") {
        let alphas = flag("alphas", MultiIndex::relaxed(p.alphas.unwrap_or([p.alpha; 3])))?;
        for e in p.edges {
            positive("edges", e)?;
        }
        positive("rho0", p.rho0)?;
        report.result("mass", parallelepiped_mass(&alphas, p.edges, p.rho0)?);
    }
    Ok(Outcome::ok(report))
}
