//! Euler–Bernoulli cantilever modes of a fractal beam.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{BeamConfig, Convention};
use crate::diffops::fd;
use crate::error::{Error, Result};
use crate::quadrature::gauss_legendre;

/// Roots are refined until `|cos z + sech z|` falls below this.
pub const ROOT_TOLERANCE: f64 = 1e-12;

/// Frequency equation `cosh z cos z + 1 = 0` divided by `cosh z`, which
/// keeps the residual well scaled for large `z`.
#[inline]
pub fn frequency_residual(z: f64) -> f64 {
    z.cos() + 1.0 / z.cosh()
}

fn frequency_residual_derivative(z: f64) -> f64 {
    -z.sin() - z.tanh() / z.cosh()
}

/// First `count` positive roots `z_n` of `cosh z cos z + 1 = 0`.
///
/// Root `m` is bracketed by `((m−1)π, mπ)`, isolated by bisection and
/// polished by Newton steps.
pub fn frequency_roots(count: usize) -> Result<Vec<f64>> {
    if count == 0 {
        return Err(Error::InvalidArgument("need at least one root".into()));
    }
    let pi = std::f64::consts::PI;
    (1..=count)
        .map(|m| {
            let (mut lo, mut hi) = ((m - 1) as f64 * pi, m as f64 * pi);
            let (flo, fhi) = (frequency_residual(lo), frequency_residual(hi));
            if flo.signum() == fhi.signum() {
                return Err(Error::RootBracketFailure { index: m });
            }
            let rising = flo < 0.0;
            for _ in 0..60 {
                let mid = 0.5 * (lo + hi);
                if (frequency_residual(mid) < 0.0) == rising {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            let mut z = 0.5 * (lo + hi);
            for _ in 0..4 {
                let r = frequency_residual(z);
                if r.abs() <= 0.25 * ROOT_TOLERANCE {
                    break;
                }
                let next = z - r / frequency_residual_derivative(z);
                if !(next > (m - 1) as f64 * pi && next < m as f64 * pi) {
                    break;
                }
                z = next;
            }
            if frequency_residual(z).abs() > ROOT_TOLERANCE {
                return Err(Error::RootBracketFailure { index: m });
            }
            Ok(z)
        })
        .collect()
}

/// Wavenumbers `k_n`: `z_n/Λ` with `Λ = X(L)`, or `z_n/L` for the literal
/// convention.
pub fn characteristic_roots(config: &BeamConfig, count: usize, convention: Convention) -> Result<Vec<f64>> {
    let len = match convention {
        Convention::Effective => config.effective_length(),
        Convention::Literal => config.length,
    };
    Ok(frequency_roots(count)?.into_iter().map(|z| z / len).collect())
}

/// `ω_n = k_n² √(E I_d / (ρ A))`.
pub fn natural_frequencies(config: &BeamConfig, roots: &[f64]) -> Vec<f64> {
    let c = config.bending_wave_speed();
    roots.iter().map(|k| k * k * c).collect()
}

/// A cantilever mode `w₀(cosh kχ − cos kχ + C(sin kχ − sinh kχ))`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModeShape {
    pub k: f64,
    pub shape_constant: f64,
    pub w0: f64,
    pub config: BeamConfig,
    pub convention: Convention,
    /// `(1 − C)/2`, computed without cancellation.
    grow: f64,
}

impl ModeShape {
    pub fn new(config: &BeamConfig, k: f64, convention: Convention) -> Self {
        let zl = match convention {
            Convention::Effective => k * config.effective_length(),
            Convention::Literal => k * config.length.powf(config.alpha.value()),
        };
        let denom = zl.sin() + zl.sinh();
        let c = (zl.cos() + zl.cosh()) / denom;
        // sinh − cosh = −e^{−z}
        let grow = 0.5 * (zl.sin() - zl.cos() - (-zl).exp()) / denom;
        Self {
            k,
            shape_constant: c,
            w0: 1.0,
            config: *config,
            convention,
            grow,
        }
    }

    /// Argument `χ` of the shape: `X(x)`, or `x^α` for the literal form.
    pub fn chi(&self, x: f64) -> f64 {
        match self.convention {
            Convention::Effective => self.config.effective_coordinate(x),
            Convention::Literal => x.signum() * x.abs().powf(self.config.alpha.value()),
        }
    }

    /// `d^m w/dχ^m` for `m ≤ 3`.
    pub fn derivative_chi(&self, chi: f64, m: u32) -> f64 {
        let u = self.k * chi;
        let (a, b, c) = (self.grow, 0.5 * (1.0 + self.shape_constant), self.shape_constant);
        let (e_up, e_dn) = (a * u.exp(), b * (-u).exp());
        let (s, co) = u.sin_cos();
        let v = match m % 4 {
            // each term vanishes exactly at u = 0
            0 => a * u.exp_m1() + b * (-u).exp_m1() + 2.0 * (0.5 * u).sin().powi(2) + c * s,
            1 => e_up - e_dn + s + c * co,
            2 => e_up + e_dn + co - c * s,
            _ => e_up - e_dn - s - c * co,
        };
        self.w0 * self.k.powi(m as i32) * v
    }

    pub fn eval_chi(&self, chi: f64) -> f64 {
        self.derivative_chi(chi, 0)
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.eval_chi(self.chi(x))
    }

    /// End of the beam in the shape's own coordinate.
    pub fn chi_end(&self) -> f64 {
        self.chi(self.config.length)
    }

    /// `|w(0)|, |∂w(0)|, |∂²w(L)|, |∂³w(L)|`, each divided by `k^m max|w|`.
    pub fn boundary_residuals(&self) -> [f64; 4] {
        let end = self.chi_end();
        let scale = self.max_abs(400);
        [
            self.derivative_chi(0.0, 0).abs() / scale,
            self.derivative_chi(0.0, 1).abs() / (self.k * scale),
            self.derivative_chi(end, 2).abs() / (self.k.powi(2) * scale),
            self.derivative_chi(end, 3).abs() / (self.k.powi(3) * scale),
        ]
    }

    pub fn max_abs(&self, samples: usize) -> f64 {
        let end = self.chi_end();
        (0..=samples)
            .map(|i| self.eval_chi(end * i as f64 / samples as f64).abs())
            .fold(0.0, f64::max)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ModalResult {
    pub index: usize,
    pub z: f64,
    pub root: f64,
    pub frequency: f64,
    pub shape_constant: f64,
    pub w0: f64,
    /// Samples `(x, X(x), w(x))`.
    pub shape: Vec<[f64; 3]>,
}

/// The first `count` modes with shapes sampled at `points` evenly spaced
/// positions in `[0, L]`.
pub fn modal_analysis(config: &BeamConfig, count: usize, points: usize, convention: Convention) -> Result<Vec<ModalResult>> {
    let zs = frequency_roots(count)?;
    let ks = characteristic_roots(config, count, convention)?;
    let omegas = natural_frequencies(config, &ks);
    Ok((0..count)
        .into_par_iter()
        .map(|i| (i, ((&zs[i], &ks[i]), &omegas[i])))
        .map(|(i, ((&z, &k), &omega))| {
            let mode = ModeShape::new(config, k, convention);
            let shape = (0..points)
                .map(|j| {
                    let x = config.length * j as f64 / (points - 1).max(1) as f64;
                    [x, config.effective_coordinate(x), mode.eval(x)]
                })
                .collect();
            ModalResult {
                index: i + 1,
                z,
                root: k,
                frequency: omega,
                shape_constant: mode.shape_constant,
                w0: mode.w0,
                shape,
            }
        })
        .collect())
}

/// `∫₀^Λ w_m w_n dX / √(∫w_m² ∫w_n²)`.
pub fn modal_inner_product(a: &ModeShape, b: &ModeShape) -> f64 {
    let end = a.chi_end();
    let (nodes, weights) = gauss_legendre(32);
    let panels = 16;
    let w = end / panels as f64;
    let (mut ab, mut aa, mut bb) = (0.0, 0.0, 0.0);
    for p in 0..panels {
        let mid = w * (p as f64 + 0.5);
        for (t, wt) in nodes.iter().zip(&weights) {
            let chi = mid + 0.5 * w * t;
            let (u, v) = (a.eval_chi(chi), b.eval_chi(chi));
            ab += wt * u * v;
            aa += wt * u * u;
            bb += wt * v * v;
        }
    }
    ab / (aa * bb).sqrt()
}

/// Space–time sample grid for [`euler_bernoulli_residual`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResidualGrid {
    /// Sample positions in `x`; all must be positive when `α ≠ 1`.
    pub xs: Vec<f64>,
    pub times: Vec<f64>,
    /// Difference step in the effective coordinate.
    pub h_chi: f64,
    pub h_t: f64,
}

impl ResidualGrid {
    /// Grid suited to a mode with wavenumber `k` and frequency `ω`: `nx`
    /// points in `[x₀, L]` and `nt` times over one period.
    pub fn for_mode(config: &BeamConfig, k: f64, omega: f64, x0: f64, nx: usize, nt: usize) -> Self {
        let xs = (0..nx)
            .map(|i| x0 + (config.length - x0) * i as f64 / (nx - 1).max(1) as f64)
            .collect();
        let period = 2.0 * std::f64::consts::PI / omega;
        let times = (0..nt).map(|i| period * i as f64 / nt as f64).collect();
        Self {
            xs,
            times,
            h_chi: 0.05 / k,
            h_t: 0.05 / omega,
        }
    }
}

/// Relative residual of `ρA ∂²ₜw + E I_d ∂⁴_{x,α} w = 0`: the max of
/// `|ρA w_tt + EI ∂⁴w|` over the grid divided by the max of the two terms.
/// `∂⁴_{x,α}` is four nested difference quotients in `X`.
pub fn euler_bernoulli_residual<W>(w: W, config: &BeamConfig, grid: &ResidualGrid) -> Result<f64>
where
    W: Fn(f64, f64) -> f64,
{
    let singular = config.alpha.value() != 1.0;
    let reach = 4.0 * 2.0 * grid.h_chi;
    let mut num = 0.0f64;
    let mut scale = 0.0f64;
    for &x in &grid.xs {
        let chi = config.effective_coordinate(x);
        if singular && chi - reach <= 0.0 {
            return Err(Error::DomainError(format!(
                "x = {x} is too close to the singular point for the X-difference stencil"
            )));
        }
        for &t in &grid.times {
            let wt = fd::second_derivative_of(|s| w(x, s), t, grid.h_t);
            let in_chi = |c: f64| w(config.inverse_effective_coordinate(c), t);
            let d1 = |c: f64| fd::derivative_of(in_chi, c, grid.h_chi);
            let d2 = |c: f64| fd::derivative_of(d1, c, grid.h_chi);
            let d3 = |c: f64| fd::derivative_of(d2, c, grid.h_chi);
            let d4 = fd::derivative_of(d3, chi, grid.h_chi);
            let inertia = config.rho * config.area * wt;
            let stiffness = config.e * config.i_d * d4;
            num = num.max((inertia + stiffness).abs());
            scale = scale.max(inertia.abs()).max(stiffness.abs());
        }
    }
    Ok(if scale == 0.0 { 0.0 } else { num / scale })
}

/// `w_F(x, t) = w_c(X(x), t)`.
pub fn transfer_solution<W>(classical: W, config: &BeamConfig) -> impl Fn(f64, f64) -> f64
where
    W: Fn(f64, f64) -> f64,
{
    let cfg = *config;
    move |x, t| classical(cfg.effective_coordinate(x), t)
}
