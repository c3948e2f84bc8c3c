//! Integration over non-integer dimensional product measures.
//!
//! The density of states `c₁(α, x) ∝ |x − s|^{α−1}` has a closed-form
//! antiderivative, so the default rule integrates in the effective
//! coordinate `u = X(x)` where the measure becomes `du` and the weight
//! disappears. Intervals are split at the singular point, and the panel next
//! to it is graded geometrically because `x(u) ∝ u^{1/α}` is not smooth there.

mod gauss;
mod monte_carlo;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::gamma::gamma;
use crate::measure::{MultiIndex, WeightFamily, WeightSpec};

pub use gauss::gauss_legendre;
pub use monte_carlo::{mc_integrate_1d, mc_integrate_product, McEstimate};

/// Geometric grading toward a singular endpoint: each level shrinks the
/// innermost panel by this ratio.
const GRADE_RATIO: f64 = 0.15;
const GRADE_LEVELS: usize = 6;
// the plain rule integrates |x|^{α−1} directly and needs a finer innermost panel
const PLAIN_GRADE_LEVELS: usize = 24;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "rule", rename_all = "kebab-case")]
pub enum Rule {
    /// Gauss–Legendre in the effective coordinate (weight removed exactly).
    SubstitutionGaussLegendre,
    /// Gauss–Legendre in `x` with the weight multiplied into the integrand.
    PlainGaussLegendre,
    /// Uniform sampling in the effective coordinate.
    MonteCarlo { seed: u64, samples: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadratureSpec {
    pub rule: Rule,
    pub nodes_per_panel: usize,
    /// Uniform panels per one-sided piece of an interval.
    pub panels: usize,
    /// Maximum accepted relative disagreement between the rule and the same
    /// rule with doubled panels.
    pub rel_tol: f64,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            rule: Rule::SubstitutionGaussLegendre,
            nodes_per_panel: 16,
            panels: 2,
            rel_tol: 1e-8,
        }
    }
}

impl QuadratureSpec {
    pub fn new(rule: Rule, nodes_per_panel: usize, panels: usize, rel_tol: f64) -> Result<Self> {
        let spec = Self {
            rule,
            nodes_per_panel,
            panels,
            rel_tol,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn with_rule(mut self, rule: Rule) -> Self {
        self.rule = rule;
        self
    }

    pub fn with_panels(mut self, panels: usize) -> Self {
        self.panels = panels;
        self
    }

    pub fn with_nodes(mut self, nodes_per_panel: usize) -> Self {
        self.nodes_per_panel = nodes_per_panel;
        self
    }

    pub fn with_tol(mut self, rel_tol: f64) -> Self {
        self.rel_tol = rel_tol;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.nodes_per_panel < 2 {
            return Err(Error::InvalidArgument(format!(
                "nodes_per_panel must be >= 2, got {}",
                self.nodes_per_panel
            )));
        }
        if self.panels < 1 {
            return Err(Error::InvalidArgument("panels must be >= 1".into()));
        }
        if !(self.rel_tol > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "rel_tol must be > 0, got {}",
                self.rel_tol
            )));
        }
        if let Rule::MonteCarlo { samples, .. } = self.rule {
            if samples < 1000 {
                return Err(Error::InvalidArgument(format!(
                    "Monte Carlo needs at least 1000 samples, got {samples}"
                )));
            }
        }
        Ok(())
    }
}

/// An axis-aligned box `[a₁,b₁]×[a₂,b₂]×[a₃,b₃]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Box3 {
    lo: [f64; 3],
    hi: [f64; 3],
}

impl Box3 {
    pub fn new(lo: [f64; 3], hi: [f64; 3]) -> Result<Self> {
        for k in 0..3 {
            if !(lo[k].is_finite() && hi[k].is_finite() && lo[k] < hi[k]) {
                return Err(Error::InvalidArgument(format!(
                    "axis {} interval [{}, {}] must be finite with a < b",
                    k + 1,
                    lo[k],
                    hi[k]
                )));
            }
        }
        Ok(Self { lo, hi })
    }

    /// The cube `[a, b]³`.
    pub fn cube(a: f64, b: f64) -> Result<Self> {
        Self::new([a; 3], [b; 3])
    }

    pub fn lo(&self) -> [f64; 3] {
        self.lo
    }

    pub fn hi(&self) -> [f64; 3] {
        self.hi
    }

    pub fn interval(&self, axis: usize) -> (f64, f64) {
        (self.lo[axis], self.hi[axis])
    }

    pub fn contains(&self, p: [f64; 3]) -> bool {
        (0..3).all(|k| p[k] >= self.lo[k] && p[k] <= self.hi[k])
    }
}

/// A value together with the refinement disagreement `|I(2p) − I(p)|`
/// (or the standard error for Monte Carlo).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Estimate {
    pub value: f64,
    pub disagreement: f64,
}

/// `u = scale · sgn(x − center) |x − center|^power`: the antiderivative of a
/// power-law weight `scale · power · |x − center|^{power−1}`.
#[derive(Debug, Clone, Copy)]
pub(crate) struct PowerMap {
    center: f64,
    scale: f64,
    power: f64,
}

impl PowerMap {
    pub(crate) fn for_weight(spec: &WeightSpec) -> Self {
        let alpha = spec.alpha.value();
        let center = match spec.family {
            WeightFamily::NonInteger => 0.0,
            WeightFamily::RiemannLiouville { a } => a,
            WeightFamily::ModifiedRl { b } => b,
        };
        Self {
            center,
            scale: spec.prefactor() / alpha,
            power: alpha,
        }
    }

    #[inline]
    pub(crate) fn forward(&self, x: f64) -> f64 {
        let d = x - self.center;
        self.scale * d.signum() * d.abs().powf(self.power)
    }

    #[inline]
    pub(crate) fn inverse(&self, u: f64) -> f64 {
        if u == 0.0 {
            return self.center;
        }
        self.center + u.signum() * (u.abs() / self.scale).powf(1.0 / self.power)
    }

    #[inline]
    fn density(&self, x: f64) -> f64 {
        self.scale * self.power * (x - self.center).abs().powf(self.power - 1.0)
    }
}

/// A one-dimensional quadrature rule with the measure folded into the
/// weights: `∫ f dμ ≈ Σ wᵢ f(xᵢ)`.
#[derive(Debug, Clone, Default)]
pub struct AxisRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl AxisRule {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn apply<F: Fn(f64) -> f64>(&self, f: F) -> f64 {
        self.nodes
            .iter()
            .zip(&self.weights)
            .map(|(&x, &w)| w * f(x))
            .sum()
    }

    pub fn total_weight(&self) -> f64 {
        self.weights.iter().sum()
    }
}

/// Append Gauss–Legendre nodes for `[lo, hi]` split into `panels` equal
/// panels, grading the end panel selected by `grade` with `levels`
/// geometric cuts. `emit(t, w)` receives each node and its weight.
fn graded_panels(
    lo: f64,
    hi: f64,
    panels: usize,
    grade: Grade,
    levels: usize,
    gl: &(Vec<f64>, Vec<f64>),
    emit: &mut dyn FnMut(f64, f64),
) {
    let width = (hi - lo) / panels as f64;
    let push_panel = |a: f64, b: f64, emit: &mut dyn FnMut(f64, f64)| {
        let half = 0.5 * (b - a);
        let mid = 0.5 * (a + b);
        for (t, w) in gl.0.iter().zip(&gl.1) {
            emit(mid + half * t, half * w);
        }
    };
    for p in 0..panels {
        let a = lo + width * p as f64;
        let b = if p + 1 == panels { hi } else { lo + width * (p + 1) as f64 };
        let graded_here = match grade {
            Grade::Lo => p == 0,
            Grade::Hi => p + 1 == panels,
            Grade::None => false,
        };
        if !graded_here {
            push_panel(a, b, emit);
            continue;
        }
        // breakpoints shrinking geometrically toward the singular end
        let mut cuts = Vec::with_capacity(levels + 2);
        let len = b - a;
        match grade {
            Grade::Lo => {
                cuts.push(a);
                for level in (1..=levels).rev() {
                    cuts.push(a + len * GRADE_RATIO.powi(level as i32));
                }
                cuts.push(b);
            }
            _ => {
                cuts.push(a);
                for level in 1..=levels {
                    cuts.push(b - len * GRADE_RATIO.powi(level as i32));
                }
                cuts.push(b);
            }
        }
        for pair in cuts.windows(2) {
            push_panel(pair[0], pair[1], emit);
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Grade {
    None,
    Lo,
    Hi,
}

/// Build the composite rule for `∫_a^b f dμ` with the measure of `spec`.
/// `level` doubles the number of uniform panels `level` times.
pub fn axis_rule(a: f64, b: f64, spec: &WeightSpec, q: &QuadratureSpec, level: u32) -> Result<AxisRule> {
    q.validate()?;
    if !(a < b) {
        return Err(Error::InvalidArgument(format!("interval [{a}, {b}] must have a < b")));
    }
    let map = PowerMap::for_weight(spec);
    Ok(power_rule(a, b, &map, q, level))
}

pub(crate) fn power_rule(a: f64, b: f64, map: &PowerMap, q: &QuadratureSpec, level: u32) -> AxisRule {
    let gl = gauss_legendre(q.nodes_per_panel);
    let panels = q.panels << level;
    let c = map.center;
    let smooth = map.power == 1.0;
    let mut rule = AxisRule::default();

    // one-sided pieces; the singular point is an endpoint of each piece
    let mut pieces = Vec::with_capacity(2);
    if a < c && c < b {
        pieces.push((a, c));
        pieces.push((c, b));
    } else {
        pieces.push((a, b));
    }

    for (lo, hi) in pieces {
        let grade = if smooth {
            Grade::None
        } else if lo == c {
            Grade::Lo
        } else if hi == c {
            Grade::Hi
        } else {
            Grade::None
        };
        match q.rule {
            Rule::PlainGaussLegendre => {
                let mut emit = |x: f64, w: f64| {
                    rule.nodes.push(x);
                    rule.weights.push(w * map.density(x));
                };
                graded_panels(lo, hi, panels, grade, PLAIN_GRADE_LEVELS, &gl, &mut emit);
            }
            // Monte Carlo callers never build deterministic rules; fall back
            // to substitution so that refinement checks stay meaningful
            Rule::SubstitutionGaussLegendre | Rule::MonteCarlo { .. } => {
                let (ulo, uhi) = (map.forward(lo), map.forward(hi));
                let mut emit = |u: f64, w: f64| {
                    rule.nodes.push(map.inverse(u));
                    rule.weights.push(w);
                };
                graded_panels(ulo, uhi, panels, grade, GRADE_LEVELS, &gl, &mut emit);
            }
        }
    }
    rule
}

fn check_tolerance(fine: f64, coarse: f64, magnitude: f64, q: &QuadratureSpec) -> Result<Estimate> {
    let disagreement = (fine - coarse).abs();
    // relative test, with a floor for integrals that cancel to ~0
    let allowed = q.rel_tol * fine.abs().max(1e-12 * magnitude);
    if !(disagreement <= allowed) {
        return Err(Error::ToleranceNotMet {
            estimate: fine,
            disagreement,
            tolerance: allowed,
        });
    }
    Ok(Estimate {
        value: fine,
        disagreement,
    })
}

/// `∫_a^b f(x) c₁(α, x) dx`, with the refinement disagreement.
pub fn integrate_1d_estimate<F>(f: F, interval: (f64, f64), weight: &WeightSpec, q: &QuadratureSpec) -> Result<Estimate>
where
    F: Fn(f64) -> f64,
{
    let (a, b) = interval;
    if let Rule::MonteCarlo { seed, samples } = q.rule {
        q.validate()?;
        let mc = mc_integrate_1d(&f, interval, weight, seed, samples)?;
        return Ok(Estimate {
            value: mc.estimate,
            disagreement: mc.stderr,
        });
    }
    let coarse_rule = axis_rule(a, b, weight, q, 0)?;
    let fine_rule = axis_rule(a, b, weight, q, 1)?;
    let coarse = coarse_rule.apply(&f);
    let fine = fine_rule.apply(&f);
    let magnitude = fine_rule.apply(|x| f(x).abs());
    check_tolerance(fine, coarse, magnitude, q)
}

/// `∫_a^b f(x) c₁(α, x) dx` for any density-of-states family.
pub fn integrate_1d<F>(f: F, interval: (f64, f64), weight: &WeightSpec, q: &QuadratureSpec) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    integrate_1d_estimate(f, interval, weight, q).map(|e| e.value)
}

fn tensor_apply<F>(f: &F, rules: &[AxisRule; 3]) -> (f64, f64)
where
    F: Fn([f64; 3]) -> f64 + Sync,
{
    // parallel over the outer axis; partial sums reduced in index order
    let partial: Vec<(f64, f64)> = rules[0]
        .nodes
        .par_iter()
        .zip(rules[0].weights.par_iter())
        .map(|(&x1, &w1)| {
            let mut s2 = 0.0;
            let mut a2 = 0.0;
            for (&x2, &w2) in rules[1].nodes.iter().zip(&rules[1].weights) {
                let mut s3 = 0.0;
                let mut a3 = 0.0;
                for (&x3, &w3) in rules[2].nodes.iter().zip(&rules[2].weights) {
                    let v = f([x1, x2, x3]);
                    s3 += w3 * v;
                    a3 += w3 * v.abs();
                }
                s2 += w2 * s3;
                a2 += w2 * a3;
            }
            (w1 * s2, w1 * a2)
        })
        .collect();
    partial
        .iter()
        .fold((0.0, 0.0), |(s, a), &(ps, pa)| (s + ps, a + pa))
}

fn nids_specs(alphas: &MultiIndex) -> [WeightSpec; 3] {
    [0, 1, 2].map(|k| WeightSpec::non_integer(alphas.axis(k)))
}

/// Product-measure integral `∫_W f dμ(α₁,x₁) dμ(α₂,x₂) dμ(α₃,x₃)` with the
/// refinement disagreement. `x₃` is the innermost variable.
pub fn integrate_product_estimate<F>(f: F, domain: &Box3, alphas: &MultiIndex, q: &QuadratureSpec) -> Result<Estimate>
where
    F: Fn([f64; 3]) -> f64 + Sync,
{
    if let Rule::MonteCarlo { seed, samples } = q.rule {
        q.validate()?;
        let mc = mc_integrate_product(&f, domain, alphas, seed, samples)?;
        return Ok(Estimate {
            value: mc.estimate,
            disagreement: mc.stderr,
        });
    }
    let specs = nids_specs(alphas);
    let rules_at = |level: u32| -> Result<[AxisRule; 3]> {
        let (a0, b0) = domain.interval(0);
        let (a1, b1) = domain.interval(1);
        let (a2, b2) = domain.interval(2);
        Ok([
            axis_rule(a0, b0, &specs[0], q, level)?,
            axis_rule(a1, b1, &specs[1], q, level)?,
            axis_rule(a2, b2, &specs[2], q, level)?,
        ])
    };
    let (coarse, _) = tensor_apply(&f, &rules_at(0)?);
    let (fine, magnitude) = tensor_apply(&f, &rules_at(1)?);
    check_tolerance(fine, coarse, magnitude, q)
}

pub fn integrate_product<F>(f: F, domain: &Box3, alphas: &MultiIndex, q: &QuadratureSpec) -> Result<f64>
where
    F: Fn([f64; 3]) -> f64 + Sync,
{
    integrate_product_estimate(f, domain, alphas, q).map(|e| e.value)
}

/// Integrate with fixed per-axis rules (no refinement check). Useful when the
/// caller wants the exact tensor-product structure, e.g. to compare a
/// separable integrand with the product of one-dimensional integrals.
pub fn integrate_with_rules<F>(f: F, rules: &[AxisRule; 3]) -> f64
where
    F: Fn([f64; 3]) -> f64 + Sync,
{
    tensor_apply(&f, rules).0
}

/// `2π^{D/2}/Γ(D/2) ∫₀^{rmax} f(r) r^{D−1} dr`, the `D`-dimensional integral
/// of a spherically symmetric function over the ball of radius `rmax`.
pub fn radial_integral_estimate<F>(f: F, dim: f64, rmax: f64, q: &QuadratureSpec) -> Result<Estimate>
where
    F: Fn(f64) -> f64,
{
    if !(dim > 0.0 && dim.is_finite()) {
        return Err(Error::InvalidDimension(format!("D must be > 0, got {dim}")));
    }
    if !(rmax > 0.0 && rmax.is_finite()) {
        return Err(Error::InvalidArgument(format!("rmax must be > 0, got {rmax}")));
    }
    q.validate()?;
    let sphere = 2.0 * PI.powf(0.5 * dim) / gamma(0.5 * dim);
    // u = r^D / D, i.e. du = r^{D−1} dr
    let map = PowerMap {
        center: 0.0,
        scale: 1.0 / dim,
        power: dim,
    };
    let q = q.with_rule(Rule::SubstitutionGaussLegendre);
    let coarse = power_rule(0.0, rmax, &map, &q, 0).apply(&f);
    let fine_rule = power_rule(0.0, rmax, &map, &q, 1);
    let fine = fine_rule.apply(&f);
    let magnitude = fine_rule.apply(|r| f(r).abs());
    check_tolerance(sphere * fine, sphere * coarse, sphere * magnitude, &q)
}

pub fn radial_integral<F>(f: F, dim: f64, rmax: f64, q: &QuadratureSpec) -> Result<f64>
where
    F: Fn(f64) -> f64,
{
    radial_integral_estimate(f, dim, rmax, q).map(|e| e.value)
}

/// `∫₀^{π/4} sin^{p−1}φ cos^{q−1}φ dφ`, removing `φ^{p−1}` by substitution.
fn quarter_integral(p: f64, q_exp: f64, q: &QuadratureSpec, level: u32) -> f64 {
    let map = PowerMap {
        center: 0.0,
        scale: 1.0 / p,
        power: p,
    };
    let rule = power_rule(0.0, PI / 4.0, &map, q, level);
    rule.apply(|phi| {
        let sinc = if phi == 0.0 { 1.0 } else { phi.sin() / phi };
        sinc.powf(p - 1.0) * phi.cos().powf(q_exp - 1.0)
    })
}

/// `∫₀^{π/2} sin^{μ−1}x cos^{ν−1}x dx` by quadrature, split at `π/4`.
fn half_integral(mu: f64, nu: f64, q: &QuadratureSpec, level: u32) -> f64 {
    quarter_integral(mu, nu, q, level) + quarter_integral(nu, mu, q, level)
}

fn check_exponent(name: &str, v: f64) -> Result<()> {
    if !(v > 0.0 && v.is_finite()) {
        return Err(Error::InvalidDimension(format!("{name} must be > 0, got {v}")));
    }
    Ok(())
}

/// `∫₀^{2π} |cos φ|^{α₁−1} |sin φ|^{α₂−1} dφ` by quadrature.
pub fn angular_integral_phi_estimate(alpha1: f64, alpha2: f64, q: &QuadratureSpec) -> Result<Estimate> {
    check_exponent("alpha1", alpha1)?;
    check_exponent("alpha2", alpha2)?;
    let q = q.with_rule(Rule::SubstitutionGaussLegendre);
    q.validate()?;
    // four quadrants, each ∫₀^{π/2} cos^{α₁−1} sin^{α₂−1}
    let coarse = 4.0 * half_integral(alpha2, alpha1, &q, 0);
    let fine = 4.0 * half_integral(alpha2, alpha1, &q, 1);
    check_tolerance(fine, coarse, fine.abs(), &q)
}

pub fn angular_integral_phi(alpha1: f64, alpha2: f64, q: &QuadratureSpec) -> Result<f64> {
    angular_integral_phi_estimate(alpha1, alpha2, q).map(|e| e.value)
}

/// `∫₀^{π} |sin θ|^{α₁₂−1} |cos θ|^{α₃−1} dθ` by quadrature.
pub fn angular_integral_theta_estimate(alpha12: f64, alpha3: f64, q: &QuadratureSpec) -> Result<Estimate> {
    check_exponent("alpha12", alpha12)?;
    check_exponent("alpha3", alpha3)?;
    let q = q.with_rule(Rule::SubstitutionGaussLegendre);
    q.validate()?;
    let coarse = 2.0 * half_integral(alpha12, alpha3, &q, 0);
    let fine = 2.0 * half_integral(alpha12, alpha3, &q, 1);
    check_tolerance(fine, coarse, fine.abs(), &q)
}

pub fn angular_integral_theta(alpha12: f64, alpha3: f64, q: &QuadratureSpec) -> Result<f64> {
    angular_integral_theta_estimate(alpha12, alpha3, q).map(|e| e.value)
}

/// Closed form `2Γ(α₁/2)Γ(α₂/2)/Γ((α₁+α₂)/2)` of the `φ` integral.
pub fn angular_phi_closed_form(alpha1: f64, alpha2: f64) -> f64 {
    2.0 * gamma(0.5 * alpha1) * gamma(0.5 * alpha2) / gamma(0.5 * (alpha1 + alpha2))
}

/// Closed form `Γ(α₁₂/2)Γ(α₃/2)/Γ((α₁₂+α₃)/2)` of the `θ` integral.
pub fn angular_theta_closed_form(alpha12: f64, alpha3: f64) -> f64 {
    gamma(0.5 * alpha12) * gamma(0.5 * alpha3) / gamma(0.5 * (alpha12 + alpha3))
}

/// Upper bound on the part of `∫ exp(−r²) dμ_D` lying outside the ball of
/// radius `r`, and therefore outside the box `[−r, r]³`.
pub fn gaussian_tail_bound(dim: f64, r: f64) -> f64 {
    // ∫_r^∞ e^{−t²} t^{D−1} dt = ½ Γ(D/2, r²)
    let s = 0.5 * dim;
    let x = r * r;
    let upper_gamma = if s <= 1.0 {
        x.powf(s - 1.0) * (-x).exp()
    } else if x > s - 1.0 {
        x.powf(s - 1.0) * (-x).exp() / (1.0 - (s - 1.0) / x)
    } else {
        return f64::INFINITY;
    };
    2.0 * PI.powf(s) / gamma(s) * 0.5 * upper_gamma
}
