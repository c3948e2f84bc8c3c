//! Vector calculus of non-integer dimensional spaces.
//!
//! The densities of states act as Lamé coefficients `H_k = c₁(α_k, x_k)` of
//! a diagonal metric, and every first-order operator is built from
//! `∂_{x_k,α_k} = (1/H_k) ∂/∂x_k = ∂/∂X_k`. Fields are opaque callables and
//! are differentiated by central differences in the physical coordinate.

pub mod fd;
pub mod grid;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{ScalarField, VectorField};
use crate::measure::{nids_prefactor, EffectiveCoordinateMap, MultiIndex};

pub use grid::{GridField, GridSpec, Spacing};

/// Default finite-difference step for analytic fields.
pub const DEFAULT_FD_STEP: f64 = 1e-2;

/// Diagonal Lamé frame of a non-integer dimensional space.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LameFrame {
    alphas: MultiIndex,
    prefactors: [f64; 3],
    fd_step: f64,
}

impl LameFrame {
    pub fn new(alphas: MultiIndex) -> Self {
        Self {
            alphas,
            prefactors: [0, 1, 2].map(|k| nids_prefactor(alphas.alpha(k))),
            fd_step: DEFAULT_FD_STEP,
        }
    }

    pub fn euclidean() -> Self {
        Self::new(MultiIndex::euclidean())
    }

    pub fn with_fd_step(mut self, step: f64) -> Result<Self> {
        if !(step > 0.0 && step.is_finite()) {
            return Err(Error::InvalidArgument(format!("fd_step must be > 0, got {step}")));
        }
        self.fd_step = step;
        Ok(self)
    }

    pub fn alphas(&self) -> &MultiIndex {
        &self.alphas
    }

    pub fn alpha(&self, axis: usize) -> f64 {
        self.alphas.alpha(axis)
    }

    pub fn fd_step(&self) -> f64 {
        self.fd_step
    }

    /// Effective coordinate map of one axis.
    pub fn coordinate(&self, axis: usize) -> EffectiveCoordinateMap {
        EffectiveCoordinateMap::x(self.alphas.axis(axis))
    }

    /// Point in effective coordinates `(X₁, X₂, X₃)`.
    pub fn to_effective(&self, p: [f64; 3]) -> [f64; 3] {
        [0, 1, 2].map(|k| self.coordinate(k).forward(p[k]))
    }

    pub fn from_effective(&self, big: [f64; 3]) -> [f64; 3] {
        [0, 1, 2].map(|k| self.coordinate(k).inverse(big[k]))
    }

    fn singular(&self, axis: usize) -> bool {
        self.alpha(axis) != 1.0
    }

    /// Lamé coefficient `H_k = c₁(α_k, x_k)`.
    #[inline]
    pub fn lame(&self, axis: usize, x: f64) -> f64 {
        let a = self.alpha(axis);
        if a == 1.0 {
            return self.prefactors[axis];
        }
        self.prefactors[axis] * x.abs().powf(a - 1.0)
    }

    /// Diagonal metric `g_kk = H_k²`.
    pub fn metric(&self, p: [f64; 3]) -> [f64; 3] {
        [0, 1, 2].map(|k| self.lame(k, p[k]).powi(2))
    }

    /// `J = √g = H₁H₂H₃`.
    pub fn jacobian(&self, p: [f64; 3]) -> f64 {
        (0..3).map(|k| self.lame(k, p[k])).product()
    }

    /// Reject points on a coordinate plane whose axis is singular.
    pub fn check_point(&self, p: [f64; 3]) -> Result<()> {
        for (k, &x) in p.iter().enumerate() {
            if !x.is_finite() {
                return Err(Error::DomainError(format!("coordinate x{} is not finite", k + 1)));
            }
            if self.singular(k) && x == 0.0 {
                return Err(Error::DomainError(format!(
                    "point lies on the singular plane x{} = 0 (alpha = {})",
                    k + 1,
                    self.alpha(k)
                )));
            }
        }
        Ok(())
    }

    fn step(&self, axis: usize, x: f64) -> f64 {
        fd::safe_step(self.fd_step, x, self.singular(axis))
    }

    /// `∂f/∂x_k` at `p` by central differences.
    pub fn partial(&self, f: &ScalarField, axis: usize, p: [f64; 3]) -> Result<f64> {
        self.check_point(p)?;
        fd::derivative(f.along(axis, p), p[axis], self.step(axis, p[axis]))
    }

    /// `∂²f/∂x_k²` at `p` by central differences.
    pub fn second_partial(&self, f: &ScalarField, axis: usize, p: [f64; 3]) -> Result<f64> {
        self.check_point(p)?;
        fd::second_derivative(f.along(axis, p), p[axis], self.step(axis, p[axis]))
    }
}

/// `∂_{x_k,α_k} f = (1/c₁(α_k, x_k)) ∂f/∂x_k` at a point.
pub fn partial_alpha(f: &ScalarField, axis: usize, frame: &LameFrame, at: [f64; 3]) -> Result<f64> {
    Ok(frame.partial(f, axis, at)? / frame.lame(axis, at[axis]))
}

/// The field `∂_{x_k,α_k} f`.
pub fn partial_alpha_field(f: &ScalarField, axis: usize, frame: &LameFrame) -> ScalarField {
    let (f, frame) = (f.clone(), *frame);
    ScalarField::fallible(move |p| partial_alpha(&f, axis, &frame, p))
}

/// Gradient in the orthonormal frame, `(grad f)_k = (1/H_k) ∂f/∂x_k`.
pub fn grad_alpha(f: &ScalarField, frame: &LameFrame) -> VectorField {
    VectorField::new([0, 1, 2].map(|k| partial_alpha_field(f, k, frame)))
}

/// Gradient with raised index, `(grad f)^k = g^{kk} ∂f/∂x_k = (1/H_k²) ∂f/∂x_k`.
pub fn grad_alpha_covariant(f: &ScalarField, frame: &LameFrame) -> VectorField {
    VectorField::new([0, 1, 2].map(|k| {
        let (f, frame) = (f.clone(), *frame);
        ScalarField::fallible(move |p| Ok(frame.partial(&f, k, p)? / frame.lame(k, p[k]).powi(2)))
    }))
}

pub fn grad_alpha_at(f: &ScalarField, frame: &LameFrame, at: [f64; 3]) -> Result<[f64; 3]> {
    Ok([
        partial_alpha(f, 0, frame, at)?,
        partial_alpha(f, 1, frame, at)?,
        partial_alpha(f, 2, frame, at)?,
    ])
}

pub fn div_alpha_at(u: &VectorField, frame: &LameFrame, at: [f64; 3]) -> Result<f64> {
    let mut sum = 0.0;
    for k in 0..3 {
        sum += partial_alpha(u.component(k), k, frame, at)?;
    }
    Ok(sum)
}

/// `div u = Σ_k ∂_{x_k,α_k} u_k`.
pub fn div_alpha(u: &VectorField, frame: &LameFrame) -> ScalarField {
    let (u, frame) = (u.clone(), *frame);
    ScalarField::fallible(move |p| div_alpha_at(&u, &frame, p))
}

/// Levi-Civita symbol `ε_ijk`.
pub fn levi_civita(i: usize, j: usize, k: usize) -> f64 {
    match (i, j, k) {
        (0, 1, 2) | (1, 2, 0) | (2, 0, 1) => 1.0,
        (0, 2, 1) | (2, 1, 0) | (1, 0, 2) => -1.0,
        _ => 0.0,
    }
}

pub fn curl_alpha_at(u: &VectorField, frame: &LameFrame, at: [f64; 3]) -> Result<[f64; 3]> {
    let mut out = [0.0; 3];
    for (i, slot) in out.iter_mut().enumerate() {
        for j in 0..3 {
            for k in 0..3 {
                let eps = levi_civita(i, j, k);
                if eps != 0.0 {
                    *slot += eps * partial_alpha(u.component(k), j, frame, at)?;
                }
            }
        }
    }
    Ok(out)
}

/// `(curl u)_i = Σ_{j,k} ε_ijk ∂_{x_j,α_j} u_k`.
pub fn curl_alpha(u: &VectorField, frame: &LameFrame) -> VectorField {
    VectorField::new([0, 1, 2].map(|i| {
        let (u, frame) = (u.clone(), *frame);
        ScalarField::fallible(move |p| {
            let mut s = 0.0;
            for j in 0..3 {
                for k in 0..3 {
                    let eps = levi_civita(i, j, k);
                    if eps != 0.0 {
                        s += eps * partial_alpha(u.component(k), j, &frame, p)?;
                    }
                }
            }
            Ok(s)
        })
    }))
}

/// Scalar Laplacian through ordinary derivatives,
/// `Σ_k (1/c₁²)(∂²f/∂x_k² − ((α_k−1)/x_k) ∂f/∂x_k)`.
pub fn scalar_laplacian_at(f: &ScalarField, frame: &LameFrame, at: [f64; 3]) -> Result<f64> {
    let mut sum = 0.0;
    for k in 0..3 {
        let a = frame.alpha(k);
        let h = frame.lame(k, at[k]);
        let d2 = frame.second_partial(f, k, at)?;
        let term = if a == 1.0 {
            d2
        } else {
            d2 - (a - 1.0) / at[k] * frame.partial(f, k, at)?
        };
        sum += term / (h * h);
    }
    Ok(sum)
}

pub fn scalar_laplacian(f: &ScalarField, frame: &LameFrame) -> ScalarField {
    let (f, frame) = (f.clone(), *frame);
    ScalarField::fallible(move |p| scalar_laplacian_at(&f, &frame, p))
}

/// `grad div u − curl curl u`.
pub fn vector_laplacian(u: &VectorField, frame: &LameFrame) -> VectorField {
    let grad_div = grad_alpha(&div_alpha(u, frame), frame);
    let curl_curl = curl_alpha(&curl_alpha(u, frame), frame);
    VectorField::new([0, 1, 2].map(|k| {
        let a = grad_div.components[k].clone();
        let b = curl_curl.components[k].clone();
        ScalarField::fallible(move |p| Ok(a.eval(p)? - b.eval(p)?))
    }))
}

pub fn vector_laplacian_at(u: &VectorField, frame: &LameFrame, at: [f64; 3]) -> Result<[f64; 3]> {
    vector_laplacian(u, frame).eval(at)
}

/// Laplace–Beltrami operator `(1/√g) ∂_k(√g g^{kk} ∂_k f)` of the Lamé
/// metric, differentiated literally (the `√g` factors are not cancelled).
pub fn laplace_beltrami_at(f: &ScalarField, frame: &LameFrame, at: [f64; 3]) -> Result<f64> {
    frame.check_point(at)?;
    let sqrt_g = frame.jacobian(at);
    let mut sum = 0.0;
    for k in 0..3 {
        let flux = |t: f64| -> Result<f64> {
            let mut q = at;
            q[k] = t;
            let h = frame.lame(k, t);
            Ok(frame.jacobian(q) / (h * h) * frame.partial(f, k, q)?)
        };
        let step = fd::safe_step(frame.fd_step(), at[k], frame.alpha(k) != 1.0);
        sum += fd::derivative(flux, at[k], step)?;
    }
    Ok(sum / sqrt_g)
}

pub fn laplace_beltrami(f: &ScalarField, frame: &LameFrame) -> ScalarField {
    let (f, frame) = (f.clone(), *frame);
    ScalarField::fallible(move |p| laplace_beltrami_at(&f, &frame, p))
}

/// General Lamé-form divergence
/// `(1/(H₁H₂H₃)) Σ_k ∂_k((H₁H₂H₃/H_k) u_k)`, without using `∂H_k/∂x_l = 0`.
pub fn div_lame_at(u: &VectorField, frame: &LameFrame, at: [f64; 3]) -> Result<f64> {
    frame.check_point(at)?;
    let mut sum = 0.0;
    for k in 0..3 {
        let flux = |t: f64| -> Result<f64> {
            let mut q = at;
            q[k] = t;
            Ok(frame.jacobian(q) / frame.lame(k, t) * u.component(k).eval(q)?)
        };
        let step = fd::safe_step(frame.fd_step(), at[k], frame.alpha(k) != 1.0);
        sum += fd::derivative(flux, at[k], step)?;
    }
    Ok(sum / frame.jacobian(at))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn frame(a: [f64; 3]) -> LameFrame {
        LameFrame::new(MultiIndex::relaxed(a).unwrap())
    }

    /// Field built from the effective coordinates of `frame`.
    fn in_effective<F>(frame: &LameFrame, f: F) -> ScalarField
    where
        F: Fn([f64; 3]) -> f64 + Send + Sync + 'static,
    {
        let fr = *frame;
        ScalarField::new(move |p| f(fr.to_effective(p)))
    }

    const PTS: [[f64; 3]; 3] = [[0.5, 1.2, 2.0], [1.5, 0.3, 0.8], [2.5, 2.0, 0.4]];

    #[test]
    fn partial_alpha_examples() {
        let fr = frame([0.6, 1.3, 0.8]);
        let x1 = in_effective(&fr, |b| b[0]);
        for p in PTS {
            assert!((partial_alpha(&x1, 0, &fr, p).unwrap() - 1.0).abs() < 1e-9);
        }
        let flat = LameFrame::euclidean();
        let sq = ScalarField::new(|p| p[0] * p[0]);
        assert!((partial_alpha(&sq, 0, &flat, [3.0, 1.0, 1.0]).unwrap() - 6.0).abs() < 1e-10);
        let x_sq = in_effective(&fr, |b| b[0] * b[0]);
        let p = [1.5, 1.0, 1.0];
        let want = 2.0 * fr.coordinate(0).forward(1.5);
        assert!((partial_alpha(&x_sq, 0, &fr, p).unwrap() - want).abs() < 1e-9);
    }

    #[test]
    fn singular_plane_is_refused() {
        let fr = frame([0.6, 1.0, 1.0]);
        let f = ScalarField::new(|p| p[0]);
        assert!(matches!(partial_alpha(&f, 0, &fr, [0.0, 1.0, 1.0]), Err(Error::DomainError(_))));
        // only the singular axis matters
        assert!(partial_alpha(&f, 0, &fr, [1.0, 0.0, 0.0]).is_ok());
        assert!(scalar_laplacian_at(&f, &fr, [0.0, 1.0, 1.0]).is_err());
        assert!(grad_alpha(&f, &fr).eval([0.0, 1.0, 1.0]).is_err());
    }

    #[test]
    fn gradient_examples() {
        let flat = LameFrame::euclidean();
        let lin = ScalarField::new(|p| p[0] + 2.0 * p[1] + 3.0 * p[2]);
        let g = grad_alpha_at(&lin, &flat, [0.3, -2.0, 5.0]).unwrap();
        for (got, want) in g.iter().zip([1.0, 2.0, 3.0]) {
            assert!((got - want).abs() < 1e-10);
        }
        let r2 = ScalarField::new(|p| p[0] * p[0] + p[1] * p[1] + p[2] * p[2]);
        let g = grad_alpha(&r2, &flat).eval([1.0, 2.0, 3.0]).unwrap();
        for (got, want) in g.iter().zip([2.0, 4.0, 6.0]) {
            assert!((got - want).abs() < 1e-10);
        }
        let fr = frame([0.7, 1.2, 0.9]);
        let x1 = in_effective(&fr, |b| b[0]);
        let g = grad_alpha_at(&x1, &fr, PTS[1]).unwrap();
        assert!((g[0] - 1.0).abs() < 1e-9 && g[1].abs() < 1e-12 && g[2].abs() < 1e-12);
    }

    #[test]
    fn covariant_gradient_carries_extra_lame_factor() {
        let fr = frame([0.7, 1.2, 0.9]);
        let f = ScalarField::new(|p| p[0] * p[1] + p[2].sin());
        for p in PTS {
            let ortho = grad_alpha_at(&f, &fr, p).unwrap();
            let cov = grad_alpha_covariant(&f, &fr).eval(p).unwrap();
            for k in 0..3 {
                let h = fr.lame(k, p[k]);
                assert!((cov[k] * h - ortho[k]).abs() < 1e-10 * (1.0 + ortho[k].abs()));
            }
        }
    }

    #[test]
    fn divergence_examples() {
        let flat = LameFrame::euclidean();
        let u = VectorField::from_fns(|p| p[0], |p| p[1], |p| p[2]);
        assert!((div_alpha_at(&u, &flat, [0.4, 1.0, -3.0]).unwrap() - 3.0).abs() < 1e-10);
        let fr = frame([0.7, 1.2, 0.9]);
        let rot = {
            let (a, b) = (*&fr, fr);
            VectorField::from_fns(
                move |p| a.coordinate(1).forward(p[1]),
                move |p| -b.coordinate(0).forward(p[0]),
                |_| 0.0,
            )
        };
        let radial = {
            let f = fr;
            VectorField::new([0, 1, 2].map(|k| ScalarField::new(move |p| f.coordinate(k).forward(p[k]))))
        };
        for p in PTS {
            assert!(div_alpha_at(&rot, &fr, p).unwrap().abs() < 1e-9);
            assert!((div_alpha_at(&radial, &fr, p).unwrap() - 3.0).abs() < 1e-8);
        }
    }

    #[test]
    fn curl_examples() {
        let flat = LameFrame::euclidean();
        let u = VectorField::from_fns(|p| -p[1], |p| p[0], |_| 0.0);
        let c = curl_alpha_at(&u, &flat, [0.3, 0.2, 0.1]).unwrap();
        assert!(c[0].abs() < 1e-10 && c[1].abs() < 1e-10 && (c[2] - 2.0).abs() < 1e-10);
        let fr = frame([0.7, 1.2, 0.9]);
        let u = {
            let f = fr;
            VectorField::from_fns(
                move |p| -f.coordinate(1).forward(p[1]),
                move |p| f.coordinate(0).forward(p[0]),
                |_| 0.0,
            )
        };
        for p in PTS {
            let c = curl_alpha(&u, &fr).eval(p).unwrap();
            assert!(c[0].abs() < 1e-9 && c[1].abs() < 1e-9 && (c[2] - 2.0).abs() < 1e-8);
        }
        let f = in_effective(&fr, |b| b[0] * b[1] * b[2]);
        let cg = curl_alpha(&grad_alpha(&f, &fr), &fr);
        for p in PTS {
            let c = cg.eval(p).unwrap();
            assert!(c.iter().all(|v| v.abs() < 1e-7), "{c:?}");
        }
    }

    #[test]
    fn laplacian_examples() {
        let fr = frame([0.7, 1.2, 0.9]);
        let parab = in_effective(&fr, |b| b[0] * b[0] + b[1] * b[1] + b[2] * b[2]);
        for p in PTS {
            assert!((scalar_laplacian_at(&parab, &fr, p).unwrap() - 6.0).abs() < 1e-7);
        }
        let flat = LameFrame::euclidean();
        let f = ScalarField::new(|p| p[0] * p[0] * p[1]);
        assert!((scalar_laplacian_at(&f, &flat, [1.0; 3]).unwrap() - 2.0).abs() < 1e-9);
        let half = frame([0.5, 1.0, 1.0]);
        let cube = in_effective(&half, |b| b[0].powi(3));
        let want = 6.0 * half.coordinate(0).forward(2.0);
        assert!((scalar_laplacian_at(&cube, &half, [2.0, 1.0, 1.0]).unwrap() - want).abs() < 1e-7);
    }

    #[test]
    fn vector_laplacian_examples() {
        let fr = frame([0.7, 1.2, 0.9]);
        let c = VectorField::from_fns(|_| 1.0, |_| -2.0, |_| 0.5);
        for p in PTS {
            let v = vector_laplacian_at(&c, &fr, p).unwrap();
            assert!(v.iter().all(|x| x.abs() < 1e-8));
        }
        let flat = LameFrame::euclidean();
        let u = VectorField::from_fns(|p| p[0] * p[0], |_| 0.0, |_| 0.0);
        let v = vector_laplacian_at(&u, &flat, [0.5, 1.0, 2.0]).unwrap();
        assert!((v[0] - 2.0).abs() < 1e-7 && v[1].abs() < 1e-7 && v[2].abs() < 1e-7);
    }

    #[test]
    fn beltrami_and_lame_divergence_match_simplified_forms() {
        let fr = frame([0.7, 1.1, 0.9]);
        let f = in_effective(&fr, |b| b[0] * b[0] + b[1] * b[2]);
        for p in PTS {
            let lb = laplace_beltrami_at(&f, &fr, p).unwrap();
            let sl = scalar_laplacian_at(&f, &fr, p).unwrap();
            assert!((lb - sl).abs() < 1e-7, "{lb} vs {sl}");
        }
        let u = VectorField::from_fns(|p| p[0] * p[1], |p| p[2].cos(), |p| p[0] + p[2] * p[2]);
        for p in PTS {
            let a = div_lame_at(&u, &fr, p).unwrap();
            let b = div_alpha_at(&u, &fr, p).unwrap();
            assert!((a - b).abs() < 1e-8, "{a} vs {b}");
        }
        let c = ScalarField::constant(4.0);
        assert!(laplace_beltrami_at(&c, &fr, PTS[0]).unwrap().abs() < 1e-9);
    }

    #[test]
    fn metric_and_jacobian() {
        let fr = frame([0.5, 1.0, 2.0]);
        let p = [4.0, 3.0, 0.5];
        let g = fr.metric(p);
        let j = fr.jacobian(p);
        assert!((g.iter().product::<f64>().sqrt() - j).abs() < 1e-14 * j);
        assert!((fr.lame(1, 3.0) - 1.0).abs() < 1e-15);
    }
}
