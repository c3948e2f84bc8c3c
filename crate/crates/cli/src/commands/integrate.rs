use fracdim::gamma::gamma;
use fracdim::measure::{nids_prefactor, MultiIndex};
use fracdim::quadrature::{
    angular_integral_phi_estimate, angular_integral_theta_estimate, angular_phi_closed_form,
    angular_theta_closed_form, integrate_product_estimate, mc_integrate_product, radial_integral_estimate, Box3,
    QuadratureSpec,
};
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};
use std::f64::consts::PI;

use super::{flag, positive, usage, Outcome};
use crate::args::IntegrateArgs;
use crate::config::resolve;
use crate::output::Report;
use crate::{CliError, Globals};

/// Tolerance of the angular closed-form comparison.
const ANGULAR_TOL: f64 = 1e-8;

#[derive(Debug, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub struct IntegrateParams {
    pub integrand: String,
    pub dim: f64,
    pub alphas: Option<[f64; 3]>,
    /// Defaults per integrand: 9 (gaussian), 40 (exp-decay), 1 (polynomial).
    pub extent: Option<f64>,
    pub mc: bool,
    pub samples: usize,
    pub rel_tol: f64,
    pub seed: Option<u64>,
}

impl Default for IntegrateParams {
    fn default() -> Self {
        Self {
            integrand: "gaussian".into(),
            dim: 2.5,
            alphas: None,
            extent: None,
            mc: false,
            samples: 100_000,
            rel_tol: QuadratureSpec::default().rel_tol,
            seed: None,
        }
    }
}

#[derive(Serialize)]
struct Flags<'a> {
    #[serde(flatten)]
    args: &'a IntegrateArgs,
    #[serde(rename = "rel-tol", skip_serializing_if = "Option::is_none")]
    rel_tol: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    seed: Option<u64>,
}

/// Per-axis moments `∫₀^L x^n dμ(α, x) = c(α) L^{n+α}/(n+α)`.
fn moment(alpha: f64, n: f64, l: f64) -> f64 {
    nids_prefactor(alpha) * l.powf(n + alpha) / (n + alpha)
}

pub fn run(args: &IntegrateArgs, config: &Map<String, Value>, g: &Globals) -> Result<Outcome, CliError> {
    let flags = Flags {
        args,
        rel_tol: g.tol,
        seed: g.seed,
    };
    let p: IntegrateParams = resolve(config, &flags)?;
    positive("tol", p.rel_tol)?;
    let q = QuadratureSpec::default().with_tol(p.rel_tol);
    if p.mc && p.seed.is_none() {
        return Err(usage("seed", "required with --mc"));
    }
    let mut report = Report::new("integrate", &p);
    report.tolerance("rel_tol", p.rel_tol);

    if p.integrand == "angular" {
        if p.mc {
            return Err(usage("mc", "not available for the angular integrand"));
        }
        let grid: Vec<f64> = (0..5).map(|i| 0.4 + 2.1 * i as f64 / 4.0).collect();
        let (mut phi, mut theta) = (0.0f64, 0.0f64);
        for &a in &grid {
            for &b in &grid {
                let e = angular_integral_phi_estimate(a, b, &q)?;
                phi = phi.max(((e.value - angular_phi_closed_form(a, b)) / angular_phi_closed_form(a, b)).abs());
                let e = angular_integral_theta_estimate(a, b, &q)?;
                theta = theta.max(((e.value - angular_theta_closed_form(a, b)) / angular_theta_closed_form(a, b)).abs());
            }
        }
        let passed = phi <= ANGULAR_TOL && theta <= ANGULAR_TOL;
        report.result("grid", &grid);
        report.result("max_deviation_phi", phi);
        report.result("max_deviation_theta", theta);
        report.result("passed", passed);
        report.tolerance("max_deviation", ANGULAR_TOL);
        let failure = (!passed).then(|| format!("angular integrals deviate by {:e}", phi.max(theta)));
        return Ok(Outcome { report, failure });
    }

    let alphas = match p.alphas {
        Some(a) => flag("alphas", MultiIndex::relaxed(a))?,
        None => {
            positive("dim", p.dim)?;
            flag("dim", MultiIndex::relaxed([p.dim / 3.0; 3]))?
        }
    };
    let a = alphas.alphas();
    type Integrand = Box<dyn Fn([f64; 3]) -> f64 + Sync>;
    let (f, domain, reference): (Integrand, Box3, f64) = match p.integrand.as_str() {
        "gaussian" => {
            let e = positive("extent", p.extent.unwrap_or(9.0))?;
            (
                Box::new(|x: [f64; 3]| (-(x[0] * x[0] + x[1] * x[1] + x[2] * x[2])).exp()),
                flag("extent", Box3::cube(-e, e))?,
                PI.powf(0.5 * alphas.total()),
            )
        }
        "exp-decay" => {
            let e = positive("extent", p.extent.unwrap_or(40.0))?;
            let per_axis = |al: f64| 2.0 * PI.powf(0.5 * al) * gamma(al) / gamma(0.5 * al);
            (
                Box::new(|x: [f64; 3]| (-(x[0].abs() + x[1].abs() + x[2].abs())).exp()),
                flag("extent", Box3::cube(-e, e))?,
                a.iter().map(|&al| per_axis(al)).product(),
            )
        }
        "polynomial" => {
            let l = positive("extent", p.extent.unwrap_or(1.0))?;
            // 1 + x₁x₂ + x₃² on [0, L]³
            let m = |k: usize, n: f64| moment(a[k], n, l);
            (
                Box::new(|x: [f64; 3]| 1.0 + x[0] * x[1] + x[2] * x[2]),
                flag("extent", Box3::cube(0.0, l))?,
                m(0, 0.0) * m(1, 0.0) * m(2, 0.0) + m(0, 1.0) * m(1, 1.0) * m(2, 0.0) + m(0, 0.0) * m(1, 0.0) * m(2, 2.0),
            )
        }
        other => {
            return Err(usage(
                "integrand",
                format!("unknown integrand {other:?}, expected gaussian, exp-decay, polynomial or angular"),
            ))
        }
    };

    let product = integrate_product_estimate(&f, &domain, &alphas, &q)?;
    report.result("alphas", a);
    report.result("dimension", alphas.total());
    report.result("reference", reference);
    report.result(
        "product",
        json!({
            "estimate": product.value,
            "disagreement": product.disagreement,
            "rel_error": ((product.value - reference) / reference).abs(),
        }),
    );
    if p.integrand == "gaussian" {
        let rmax = domain.hi()[0];
        let radial = radial_integral_estimate(|r| (-r * r).exp(), alphas.total(), rmax, &q)?;
        report.result(
            "radial",
            json!({
                "estimate": radial.value,
                "disagreement": radial.disagreement,
                "rel_error": ((radial.value - reference) / reference).abs(),
            }),
        );
    }
    if p.mc {
        let seed = p.seed.expect("checked above");
        let mc = flag("samples", mc_integrate_product(&f, &domain, &alphas, seed, p.samples))?;
        report.result(
            "monte_carlo",
            json!({
                "estimate": mc.estimate,
                "stderr": mc.stderr,
                "samples": mc.samples,
                "deviation_sigma": (mc.estimate - reference).abs() / mc.stderr,
            }),
        );
    }
    Ok(Outcome::ok(report))
}
