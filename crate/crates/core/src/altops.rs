//! Alternative Laplacians and first-order operators from the literature on
//! fractional and non-integer dimensional spaces, with their expanded and
//! weighted-divergence forms.

use serde::{Deserialize, Serialize};

use crate::diffops::{fd, DEFAULT_FD_STEP};
use crate::error::{Error, Result};
use crate::field::ScalarField;
use crate::gamma::gamma;
use crate::measure::{nids_prefactor, MultiIndex};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum LaplacianKind {
    /// Palmer–Stavrinou.
    PS,
    K1,
    K2,
    /// `K_{α,l}`.
    Kl(f64),
    /// Divergence of gradient in the Lamé frame.
    News,
    /// Square of the approximate first-order operators.
    ZmnApprox,
}

impl LaplacianKind {
    pub fn is_k_family(&self) -> bool {
        matches!(self, Self::K1 | Self::K2 | Self::Kl(_))
    }

    pub fn name(&self) -> String {
        match self {
            Self::PS => "PS".into(),
            Self::K1 => "K1".into(),
            Self::K2 => "K2".into(),
            Self::Kl(l) => format!("Kl(l={l})"),
            Self::News => "NEWS".into(),
            Self::ZmnApprox => "ZMN".into(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LaplacianSpec {
    pub kind: LaplacianKind,
    pub alphas: MultiIndex,
    pub fd_step: f64,
}

impl LaplacianSpec {
    /// K-family operators require an isotropic multi-index here; use
    /// [`LaplacianSpec::anisotropic`] for the per-axis generalization.
    pub fn new(kind: LaplacianKind, alphas: MultiIndex) -> Result<Self> {
        if kind.is_k_family() && !alphas.is_isotropic() {
            return Err(Error::InvalidDimension(format!(
                "{} needs equal axis dimensions, got {:?}",
                kind.name(),
                alphas.alphas()
            )));
        }
        Self::anisotropic(kind, alphas)
    }

    pub fn anisotropic(kind: LaplacianKind, alphas: MultiIndex) -> Result<Self> {
        if let LaplacianKind::Kl(l) = kind {
            if !l.is_finite() {
                return Err(Error::InvalidArgument(format!("l must be finite, got {l}")));
            }
        }
        Ok(Self {
            kind,
            alphas,
            fd_step: DEFAULT_FD_STEP,
        })
    }

    pub fn isotropic(kind: LaplacianKind, alpha: f64) -> Result<Self> {
        Self::new(kind, MultiIndex::relaxed([alpha; 3])?)
    }

    pub fn with_fd_step(mut self, h: f64) -> Self {
        self.fd_step = h;
        self
    }
}

/// Derivatives of `f` along each axis at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LocalJet {
    pub value: f64,
    pub grad: [f64; 3],
    pub hess_diag: [f64; 3],
}

fn check_octant(at: [f64; 3]) -> Result<()> {
    for (k, &x) in at.iter().enumerate() {
        if !(x > 0.0 && x.is_finite()) {
            return Err(Error::DomainError(format!(
                "operator defined for x_k > 0 only, got x{} = {x}",
                k + 1
            )));
        }
    }
    Ok(())
}

/// Value, gradient and Hessian diagonal by central differences.
pub fn local_jet(f: &ScalarField, at: [f64; 3], h: f64) -> Result<LocalJet> {
    check_octant(at)?;
    let mut grad = [0.0; 3];
    let mut hess = [0.0; 3];
    for k in 0..3 {
        let step = fd::safe_step(h, at[k], true);
        let line = |t: f64| {
            let mut q = at;
            q[k] = t;
            f.eval(q)
        };
        grad[k] = fd::derivative(line, at[k], step)?;
        hess[k] = fd::second_derivative(line, at[k], step)?;
    }
    Ok(LocalJet {
        value: f.eval(at)?,
        grad,
        hess_diag: hess,
    })
}

/// Expanded form of the selected Laplacian from precomputed derivatives.
pub fn laplacian_from_jet(spec: &LaplacianSpec, at: [f64; 3], jet: &LocalJet) -> Result<f64> {
    check_octant(at)?;
    let mut sum = 0.0;
    for k in 0..3 {
        let a = spec.alphas.alpha(k);
        let x = at[k];
        let (f, d1, d2) = (jet.value, jet.grad[k], jet.hess_diag[k]);
        let ps = d2 + (a - 1.0) / x * d1;
        sum += match spec.kind {
            LaplacianKind::PS | LaplacianKind::K1 => ps,
            LaplacianKind::K2 | LaplacianKind::ZmnApprox => ps + (a - 1.0) * (a - 3.0) / (4.0 * x * x) * f,
            LaplacianKind::Kl(l) => ps + ((a - 2.0).powi(2) - 4.0 * l * l) / (4.0 * x * x) * f,
            LaplacianKind::News => {
                let c = nids_prefactor(a) * x.powf(a - 1.0);
                (d2 - (a - 1.0) / x * d1) / (c * c)
            }
        };
    }
    Ok(sum)
}

/// Evaluate the selected Laplacian in its expanded form at one point.
pub fn apply_laplacian(spec: &LaplacianSpec, f: &ScalarField, at: [f64; 3]) -> Result<f64> {
    let jet = local_jet(f, at, spec.fd_step)?;
    laplacian_from_jet(spec, at, &jet)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FirstOrderKind {
    Calcagni,
    Zmn,
}

/// `D_{α_k,k} f = ∂f/∂x_k + ((α_k−1)/(2x_k)) f`. Both kinds share this
/// expanded form.
pub fn apply_first_order(kind: FirstOrderKind, axis: usize, alphas: &MultiIndex, f: &ScalarField, at: [f64; 3]) -> Result<f64> {
    apply_first_order_step(kind, axis, alphas, f, at, DEFAULT_FD_STEP)
}

pub fn apply_first_order_step(
    _kind: FirstOrderKind,
    axis: usize,
    alphas: &MultiIndex,
    f: &ScalarField,
    at: [f64; 3],
    h: f64,
) -> Result<f64> {
    check_octant(at)?;
    let a = alphas.alpha(axis);
    let line = |t: f64| {
        let mut q = at;
        q[axis] = t;
        f.eval(q)
    };
    let d = fd::derivative(line, at[axis], fd::safe_step(h, at[axis], true))?;
    Ok(d + (a - 1.0) / (2.0 * at[axis]) * f.eval(at)?)
}

/// The field `D_{α_k,k} f`.
pub fn first_order_field(kind: FirstOrderKind, axis: usize, alphas: &MultiIndex, f: &ScalarField, h: f64) -> ScalarField {
    let (f, alphas) = (f.clone(), *alphas);
    ScalarField::fallible(move |p| apply_first_order_step(kind, axis, &alphas, &f, p, h))
}

/// Steps for nested differences (inner, outer). Both levels use the
/// eighth-order rule, which tolerates the wider stencils.
pub const NESTED_STEPS: (f64, f64) = (2e-2, 3e-2);

/// `Σ_k D_k(D_k f)` by nested differences with [`NESTED_STEPS`].
pub fn first_order_square(alphas: &MultiIndex, f: &ScalarField, at: [f64; 3]) -> Result<f64> {
    first_order_square_sum(alphas, f, at, NESTED_STEPS.0, NESTED_STEPS.1)
}

/// `Σ_k D_k(D_k f)` by nested differences. The outer step is `outer_h`,
/// the inner one `inner_h`.
pub fn first_order_square_sum(alphas: &MultiIndex, f: &ScalarField, at: [f64; 3], inner_h: f64, outer_h: f64) -> Result<f64> {
    let mut sum = 0.0;
    for k in 0..3 {
        let a = alphas.alpha(k);
        let line = |t: f64| {
            let mut q = at;
            q[k] = t;
            f.eval(q)
        };
        let inner = |t: f64| -> Result<f64> {
            Ok(fd::derivative_fine(line, t, fd::safe_step(inner_h, t, true))? + (a - 1.0) / (2.0 * t) * line(t)?)
        };
        let d = fd::derivative_fine(inner, at[k], fd::safe_step(outer_h, at[k], true))?;
        sum += d + (a - 1.0) / (2.0 * at[k]) * inner(at[k])?;
    }
    Ok(sum)
}

/// Normalization of the measure weight `v` used by the weighted-divergence
/// forms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum WeightNorm {
    /// `∏ x_k^{α−1}/Γ(α)`.
    Fractional,
    /// `∏ π^{α_k/2}/Γ(α_k/2+1) |x_k|^{α_k−1}`.
    NonInteger,
}

/// The measure weight `v(α, x)`.
pub fn measure_weight(norm: WeightNorm, alphas: &MultiIndex, x: [f64; 3]) -> f64 {
    (0..3)
        .map(|k| {
            let a = alphas.alpha(k);
            let c = match norm {
                WeightNorm::Fractional => 1.0 / gamma(a),
                WeightNorm::NonInteger => std::f64::consts::PI.powf(a / 2.0) / gamma(a / 2.0 + 1.0),
            };
            c * x[k].abs().powf(a - 1.0)
        })
        .product()
}

/// Weighted-divergence form of a K-family operator,
/// `Σ_k (w/√v) ∂_k( w⁻² ∂_k( w √v φ ))` with `w = x_k^{l−1/2}`, evaluated by
/// nested differences. `l = 1−α/2` gives `(1/v)∂(v∂φ)` and `l = 1/2` gives
/// `(1/√v)∂²(√v φ)`.
pub fn apply_k_definitional(spec: &LaplacianSpec, norm: WeightNorm, f: &ScalarField, at: [f64; 3]) -> Result<f64> {
    check_octant(at)?;
    let alphas = spec.alphas;
    let h = spec.fd_step;
    let sqrt_v = move |p: [f64; 3]| measure_weight(norm, &alphas, p).sqrt();
    let mut sum = 0.0;
    for k in 0..3 {
        let a = alphas.alpha(k);
        let l = match spec.kind {
            LaplacianKind::K1 | LaplacianKind::PS => 1.0 - a / 2.0,
            LaplacianKind::K2 | LaplacianKind::ZmnApprox => 0.5,
            LaplacianKind::Kl(l) => l,
            LaplacianKind::News => {
                return Err(Error::InvalidArgument("NEWS has no weighted-divergence K form".into()))
            }
        };
        let w = move |x: f64| x.powf(l - 0.5);
        let line = |t: f64| {
            let mut q = at;
            q[k] = t;
            q
        };
        let inner = |t: f64| -> Result<f64> { Ok(w(t) * sqrt_v(line(t)) * f.eval(line(t))?) };
        let middle = |t: f64| -> Result<f64> {
            let d = fd::derivative_fine(inner, t, fd::safe_step(h, t, true))?;
            Ok(d / (w(t) * w(t)))
        };
        let outer = fd::derivative_fine(middle, at[k], fd::safe_step(h, at[k], true))?;
        sum += w(at[k]) / sqrt_v(at) * outer;
    }
    Ok(sum)
}

/// The weighted-divergence form with the middle factor written as
/// `x_k^{l−1/2}` instead of `x_k^{1−2l}`. Kept to document that it only
/// matches the expanded operator at `l = 1/2`.
pub fn apply_kl_literal(alpha: f64, l: f64, f: &ScalarField, at: [f64; 3], h: f64) -> Result<f64> {
    check_octant(at)?;
    let alphas = MultiIndex::relaxed([alpha; 3])?;
    let mut sum = 0.0;
    for k in 0..3 {
        let w = move |x: f64| x.powf(l - 0.5);
        let line = |t: f64| {
            let mut q = at;
            q[k] = t;
            q
        };
        let sv = |p: [f64; 3]| measure_weight(WeightNorm::Fractional, &alphas, p).sqrt();
        let inner = |t: f64| -> Result<f64> { Ok(w(t) * sv(line(t)) * f.eval(line(t))?) };
        let middle = |t: f64| -> Result<f64> { Ok(w(t) * fd::derivative(inner, t, fd::safe_step(h, t, true))?) };
        sum += w(at[k]) / sv(at) * fd::derivative(middle, at[k], fd::safe_step(h, at[k], true))?;
    }
    Ok(sum)
}

/// Hand-derived NEWS − PS difference,
/// `Σ_k (1/c₁² − 1) f_kk − ((α_k−1)/x_k)(1/c₁² + 1) f_k`.
pub fn news_minus_ps(alphas: &MultiIndex, at: [f64; 3], grad: [f64; 3], hess_diag: [f64; 3]) -> f64 {
    (0..3)
        .map(|k| {
            let a = alphas.alpha(k);
            let c = nids_prefactor(a) * at[k].powf(a - 1.0);
            let inv = 1.0 / (c * c);
            (inv - 1.0) * hess_diag[k] - (a - 1.0) / at[k] * (inv + 1.0) * grad[k]
        })
        .sum()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DiscrepancyReport {
    pub a: String,
    pub b: String,
    pub max_abs: f64,
    pub mean_abs: f64,
    /// Pointwise `a(f) − b(f)`.
    pub differences: Vec<f64>,
    /// Closed-form difference term, where one is known for the pair.
    pub analytic: Option<Vec<f64>>,
}

/// Compare two Laplacians pointwise. Both are evaluated from the same
/// derivative values, so identities hold to rounding.
pub fn operator_discrepancy(a: &LaplacianSpec, b: &LaplacianSpec, f: &ScalarField, points: &[[f64; 3]]) -> Result<DiscrepancyReport> {
    let h = a.fd_step.min(b.fd_step);
    let mut diffs = Vec::with_capacity(points.len());
    let mut analytic = Vec::new();
    let news_ps = match (a.kind, b.kind) {
        (LaplacianKind::News, LaplacianKind::PS) => Some(1.0),
        (LaplacianKind::PS, LaplacianKind::News) => Some(-1.0),
        _ => None,
    };
    for &p in points {
        let jet = local_jet(f, p, h)?;
        diffs.push(laplacian_from_jet(a, p, &jet)? - laplacian_from_jet(b, p, &jet)?);
        if let Some(sign) = news_ps {
            analytic.push(sign * news_minus_ps(&a.alphas, p, jet.grad, jet.hess_diag));
        }
    }
    let n = diffs.len().max(1) as f64;
    Ok(DiscrepancyReport {
        a: a.kind.name(),
        b: b.kind.name(),
        max_abs: diffs.iter().fold(0.0f64, |m, d| m.max(d.abs())),
        mean_abs: diffs.iter().map(|d| d.abs()).sum::<f64>() / n,
        differences: diffs,
        analytic: news_ps.map(|_| analytic),
    })
}
