//! Acceptance criteria, each run at its stated tolerance and, where one is
//! given, its runtime budget. Prints one PASS/FAIL line per criterion.

use std::time::Instant;

use fracdim::beam::{frequency_residual, frequency_roots};
use fracdim::validate::{self, Measurement};

/// Roots of `cosh z cos z + 1 = 0`, computed with mpmath at 50 digits.
const ROOTS: [f64; 10] = [
    1.875_104_068_711_961_2,
    4.694_091_132_974_174_6,
    7.854_757_438_237_612_6,
    10.995_540_734_875_467,
    14.137_168_391_046_471,
    17.278_759_532_088_236,
    20.420_352_251_041_251,
    23.561_944_901_806_444,
    26.703_537_555_518_299,
    29.845_130_209_102_817,
];

enum Bound {
    Max(f64),
    Min(f64),
}

struct Outcome {
    details: Vec<String>,
    passed: bool,
}

impl Outcome {
    fn new() -> Self {
        Self {
            details: Vec::new(),
            passed: true,
        }
    }

    fn check(&mut self, what: &str, value: f64, bound: Bound) {
        let (ok, text) = match bound {
            Bound::Max(t) => (value <= t, format!("{what} = {value:.3e} <= {t:e}")),
            Bound::Min(t) => (value >= t, format!("{what} = {value:.3e} >= {t:e}")),
        };
        self.passed &= ok;
        if !ok {
            self.details.push(format!("MISSED {text}"));
        } else {
            self.details.push(text);
        }
    }

    /// Compare library measurements, found by name, against bounds owned by
    /// this test.
    fn measurements(&mut self, ms: &[Measurement], expected: &[(&str, Bound)]) {
        for (name, bound) in expected {
            match ms.iter().find(|m| m.name == *name) {
                Some(m) => self.check(name, m.value, match bound {
                    Bound::Max(t) => Bound::Max(*t),
                    Bound::Min(t) => Bound::Min(*t),
                }),
                None => {
                    self.passed = false;
                    self.details.push(format!("MISSING measurement {name:?}"));
                }
            }
        }
    }
}

fn criterion<F>(id: usize, title: &str, budget_secs: Option<f64>, body: F) -> bool
where
    F: FnOnce(&mut Outcome) -> fracdim::Result<()>,
{
    let mut out = Outcome::new();
    let start = Instant::now();
    if let Err(e) = body(&mut out) {
        out.passed = false;
        out.details.push(format!("error: {e}"));
    }
    let secs = start.elapsed().as_secs_f64();
    if let Some(limit) = budget_secs {
        out.check("runtime (s)", secs, Bound::Max(limit));
    }
    let tag = if out.passed { "PASS" } else { "FAIL" };
    println!("{tag} [{id:>2}] {title} ({secs:.2} s): {}", out.details.join("; "));
    out.passed
}

#[test]
fn acceptance_criteria() {
    let mut results = Vec::new();

    results.push(criterion(1, "ball volume and sphere area closed forms", Some(1.0), |o| {
        o.measurements(
            &validate::volumes_and_areas()?,
            &[
                ("ball volume vs quadrature (rel)", Bound::Max(1e-10)),
                ("sphere area vs dV/dR of quadrature (rel)", Bound::Max(1e-10)),
            ],
        );
        Ok(())
    }));

    results.push(criterion(2, "spherical reduction of the Gaussian integral", Some(30.0), |o| {
        o.measurements(
            &validate::spherical_reduction(20_240_601, 1_000_000)?,
            &[
                ("Gaussian product integral vs pi^(D/2) (rel)", Bound::Max(1e-6)),
                ("Gaussian radial integral vs pi^(D/2) (rel)", Bound::Max(1e-6)),
                ("Monte Carlo deviation in standard errors", Bound::Max(4.0)),
            ],
        );
        Ok(())
    }));

    results.push(criterion(3, "angular integrals vs Gamma closed forms", Some(5.0), |o| {
        o.measurements(
            &validate::angular_identities()?,
            &[
                ("azimuthal integral vs closed form (rel)", Bound::Max(1e-8)),
                ("polar integral vs closed form (rel)", Bound::Max(1e-8)),
            ],
        );
        Ok(())
    }));

    results.push(criterion(4, "vector-calculus identities", None, |o| {
        o.measurements(
            &validate::vector_identities()?,
            &[
                ("curl grad f (max abs)", Bound::Max(1e-6)),
                ("div curl u (max abs)", Bound::Max(1e-6)),
                ("Laplacian minus div grad (max abs)", Bound::Max(1e-6)),
                ("unit dimensions vs classical operators on cubic monomials (max abs)", Bound::Max(1e-7)),
            ],
        );
        Ok(())
    }));

    results.push(criterion(5, "alternative Laplacian identities", None, |o| {
        o.measurements(
            &validate::operator_zoo()?,
            &[
                ("K1 minus K(l = 1 - alpha/2)", Bound::Max(1e-10)),
                ("K2 minus K(l = 1/2)", Bound::Max(1e-10)),
                ("K2 minus sum of squared first-order operators", Bound::Max(1e-10)),
                ("K1 minus PS (isotropic)", Bound::Max(1e-10)),
                ("ZMN minus per-axis K2", Bound::Max(1e-10)),
                ("NEWS - PS minus hand-derived difference", Bound::Max(1e-8)),
                ("smallest |NEWS - PS| on the battery", Bound::Min(1e-6)),
            ],
        );
        Ok(())
    }));

    results.push(criterion(6, "Poisson analytic vs numeric", Some(10.0), |o| {
        o.measurements(
            &validate::poisson()?,
            &[
                ("analytic vs numeric Poisson (max norm)", Bound::Max(1e-5)),
                ("homogeneous basis operator residual", Bound::Max(1e-8)),
            ],
        );
        Ok(())
    }));

    results.push(criterion(7, "cantilever spectrum and modes", None, |o| {
        let z = frequency_roots(10)?;
        let residual = z.iter().map(|&z| frequency_residual(z).abs()).fold(0.0, f64::max);
        o.check("scaled residual of computed roots", residual, Bound::Max(1e-12));
        let frozen = z.iter().zip(ROOTS).map(|(a, b)| ((a - b) / b).abs()).fold(0.0, f64::max);
        o.check("roots vs 50-digit reference (rel)", frozen, Bound::Max(1e-12));
        o.measurements(
            &validate::cantilever()?,
            &[
                ("roots vs independent bisection (rel)", Bound::Max(1e-12)),
                ("mode boundary residuals (relative to max|w|)", Bound::Max(1e-6)),
                ("modal inner products, first four modes", Bound::Max(1e-6)),
                ("Euler-Bernoulli residual of modes at alpha 0.8", Bound::Max(1e-5)),
            ],
        );
        Ok(())
    }));

    results.push(criterion(8, "Timoshenko energy and solution transfer", Some(60.0), |o| {
        o.measurements(
            &validate::timoshenko()?,
            &[
                ("Newmark energy drift over 10^4 steps (rel)", Bound::Max(1e-3)),
                ("transferred classical run vs direct run after one period (rel)", Bound::Max(1e-2)),
            ],
        );
        Ok(())
    }));

    results.push(criterion(9, "mass power-law slopes", None, |o| {
        o.measurements(
            &validate::mass_power_law()?,
            &[("log-log mass slope minus alpha_k", Bound::Max(1e-12))],
        );
        Ok(())
    }));

    results.push(criterion(10, "CLI validate exits 0 and is byte-identical", None, |o| {
        let first = fracdim_cli::run_captured(["fracdim", "validate", "--format", "csv"]);
        let second = fracdim_cli::run_captured(["fracdim", "validate", "--format", "csv"]);
        o.check("exit code of first run", first.0 as f64, Bound::Max(0.0));
        o.check("exit code of second run", second.0 as f64, Bound::Max(0.0));
        let differing = (first.1 != second.1) as u8 as f64;
        o.check("outputs differ", differing, Bound::Max(0.0));
        let json_a = fracdim_cli::run_captured(["fracdim", "validate", "--seed", "7"]);
        let json_b = fracdim_cli::run_captured(["fracdim", "validate", "--seed", "7"]);
        o.check("seeded JSON runs differ", (json_a.1 != json_b.1) as u8 as f64, Bound::Max(0.0));
        Ok(())
    }));

    let failed: Vec<usize> = results
        .iter()
        .enumerate()
        .filter(|(_, ok)| !**ok)
        .map(|(i, _)| i + 1)
        .collect();
    assert!(failed.is_empty(), "criteria failed: {failed:?}");
}
