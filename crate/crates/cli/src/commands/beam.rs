use fracdim::beam::{
    characteristic_roots, modal_analysis, natural_frequencies, BeamConfig, Convention, ModeShape, TimoshenkoModel,
    ENERGY_GROWTH_LIMIT,
};
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};
use std::f64::consts::PI;

use super::{flag, positive, usage, Outcome};
use crate::args::{BeamModesArgs, BeamSimulateArgs};
use crate::config::resolve;
use crate::output::{Cell, Report, Table};
use crate::{CliError, Globals};

/// Default ceiling on `|E_final − E_initial| / E_initial` for `simulate`.
const DRIFT_TOL: f64 = 1e-3;

#[derive(Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub struct Material {
    pub alpha: f64,
    pub rho: f64,
    pub area: f64,
    pub e: f64,
    pub i_d: f64,
    pub kappa: f64,
    pub g: f64,
    pub length: f64,
}

impl Default for Material {
    fn default() -> Self {
        let u = BeamConfig::unit(1.0).expect("unit beam is valid");
        Self {
            alpha: 1.0,
            rho: u.rho,
            area: u.area,
            e: u.e,
            i_d: u.i_d,
            kappa: u.kappa,
            g: u.g,
            length: u.length,
        }
    }
}

impl Material {
    fn config(&self) -> Result<BeamConfig, CliError> {
        let named = [
            ("rho", self.rho),
            ("area", self.area),
            ("e", self.e),
            ("i-d", self.i_d),
            ("kappa", self.kappa),
            ("g", self.g),
            ("length", self.length),
        ];
        for (name, v) in named {
            positive(name, v)?;
        }
        flag(
            "alpha",
            BeamConfig::new(self.rho, self.area, self.e, self.i_d, self.kappa, self.g, self.length, self.alpha),
        )
    }
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub struct ModesParams {
    #[serde(flatten)]
    pub material: Material,
    pub count: usize,
    pub points: usize,
    pub shapes: bool,
    pub paper_literal: bool,
}

impl Default for ModesParams {
    fn default() -> Self {
        Self {
            material: Material::default(),
            count: 5,
            points: 101,
            shapes: false,
            paper_literal: false,
        }
    }
}

pub fn modes(args: &BeamModesArgs, config: &Map<String, Value>, _g: &Globals) -> Result<Outcome, CliError> {
    let p: ModesParams = resolve(config, args)?;
    let beam = p.material.config()?;
    if p.count == 0 {
        return Err(usage("count", "must be at least 1"));
    }
    if p.points < 2 {
        return Err(usage("points", "must be at least 2"));
    }
    let convention = if p.paper_literal {
        Convention::Literal
    } else {
        Convention::Effective
    };
    let modes = modal_analysis(&beam, p.count, p.points, convention)?;
    let mut report = Report::new("beam-modes", &p);
    report.result("convention", convention);
    report.result("effective_length", beam.effective_length());
    let boundary: Vec<[f64; 4]> = modes
        .iter()
        .map(|m| ModeShape::new(&beam, m.root, convention).boundary_residuals())
        .collect();
    report.result("boundary_residuals", boundary);
    if p.shapes {
        let mut header = vec!["x".to_string(), "X".to_string()];
        header.extend(modes.iter().map(|m| format!("w_{}", m.index)));
        let mut table = Table::new(&header);
        for j in 0..p.points {
            let s = modes[0].shape[j];
            let mut row = vec![Cell::from(s[0]), Cell::from(s[1])];
            row.extend(modes.iter().map(|m| Cell::from(m.shape[j][2])));
            table.push(row);
        }
        report.table("shapes", table);
    } else {
        let mut table = Table::new(&["n", "z", "k", "omega", "C"]);
        for m in &modes {
            table.push(vec![
                m.index.into(),
                m.z.into(),
                m.root.into(),
                m.frequency.into(),
                m.shape_constant.into(),
            ]);
        }
        report.table("modes", table);
    }
    Ok(Outcome::ok(report))
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub struct SimulateParams {
    #[serde(flatten)]
    pub material: Material,
    pub steps: usize,
    pub elements: usize,
    /// Defaults to 1/200 of the first Euler–Bernoulli period.
    pub dt: Option<f64>,
    pub mode: usize,
    pub stride: usize,
    pub drift_tol: f64,
}

impl Default for SimulateParams {
    fn default() -> Self {
        Self {
            material: Material::default(),
            steps: 10_000,
            elements: 100,
            dt: None,
            mode: 1,
            stride: 100,
            drift_tol: DRIFT_TOL,
        }
    }
}

#[derive(Serialize)]
struct SimulateFlags<'a> {
    #[serde(flatten)]
    args: &'a BeamSimulateArgs,
    #[serde(rename = "drift-tol", skip_serializing_if = "Option::is_none")]
    drift_tol: Option<f64>,
}

pub fn simulate(args: &BeamSimulateArgs, config: &Map<String, Value>, g: &Globals) -> Result<Outcome, CliError> {
    let flags = SimulateFlags { args, drift_tol: g.tol };
    let p: SimulateParams = resolve(config, &flags)?;
    let beam = p.material.config()?;
    positive("tol", p.drift_tol)?;
    if p.mode == 0 {
        return Err(usage("mode", "modes are numbered from 1"));
    }
    if p.elements < 2 {
        return Err(usage("elements", "need at least 2 elements"));
    }
    if p.stride == 0 {
        return Err(usage("stride", "must be at least 1"));
    }
    let ks = characteristic_roots(&beam, p.mode, Convention::Effective)?;
    let omegas = natural_frequencies(&beam, &ks);
    let dt = match p.dt {
        Some(dt) => positive("dt", dt)?,
        None => 2.0 * PI / omegas[0] / 200.0,
    };
    let model = flag("elements", TimoshenkoModel::new(&beam, p.elements, dt))?;
    let shape = ModeShape::new(&beam, ks[p.mode - 1], Convention::Effective);
    let mut state = model.modal_state(&shape);
    let initial = model.energy(&state);
    let samples = model.run(&mut state, p.steps, p.stride)?;
    let last = model.energy(&state);
    let drift = (last.total() - initial.total()).abs() / initial.total();

    let mut report = Report::new("beam-simulate", &p);
    report.tolerance("energy_drift", p.drift_tol);
    report.tolerance("energy_growth_per_window", ENERGY_GROWTH_LIMIT);
    report.result("dt", dt);
    report.result("euler_bernoulli_omega", omegas[p.mode - 1]);
    report.result("timoshenko_fundamental_omega", model.fundamental_frequency()?);
    report.result("initial_energy", initial.total());
    report.result("final_energy", last.total());
    report.result("energy_drift", drift);
    let mut table = Table::new(&["t", "tip", "kinetic", "bending", "shear", "total"]);
    for s in &samples {
        let e = s.energy;
        table.push(vec![
            s.t.into(),
            s.tip.into(),
            e.kinetic.into(),
            e.bending.into(),
            e.shear.into(),
            e.total().into(),
        ]);
    }
    report.table("series", table);
    let failure = (drift > p.drift_tol).then(|| format!("energy drift {drift:e} exceeds {:e}", p.drift_tol));
    Ok(Outcome { report, failure })
}
