//! Fractal beams: Euler–Bernoulli cantilever modes, Timoshenko dynamics and
//! the map between fractal and classical solutions.
//!
//! Everything is written in the effective axial coordinate `χ = X(x)`, in
//! which `∂_{x,α} = d/dχ` and the fractal equations take the classical form.

mod modal;
mod timoshenko;

pub use modal::*;
pub use timoshenko::*;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::measure::{AxisDimension, EffectiveCoordinateMap};

/// Largest axial dimension accepted for a beam.
pub const MAX_BEAM_ALPHA: f64 = 1.5;

/// How the cantilever formulas are evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Convention {
    /// Argument `k X(x)`, frequency equation in `k X(L)`.
    #[default]
    Effective,
    /// Argument `k x^α` with `k = z/L` in both the shape and the frequency equation.
    Literal,
}

/// Material and geometry of a homogeneous fractal beam.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BeamConfig {
    pub rho: f64,
    pub area: f64,
    pub e: f64,
    pub i_d: f64,
    pub kappa: f64,
    pub g: f64,
    pub length: f64,
    pub alpha: AxisDimension,
}

impl BeamConfig {
    #[allow(clippy::too_many_arguments)]
    pub fn new(rho: f64, area: f64, e: f64, i_d: f64, kappa: f64, g: f64, length: f64, alpha: f64) -> Result<Self> {
        let cfg = Self {
            rho,
            area,
            e,
            i_d,
            kappa,
            g,
            length,
            alpha: AxisDimension::new(alpha)?,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    /// `ρ = A = E = I_d = L = 1`, `κ = 5/6`, `G = 0.4`.
    pub fn unit(alpha: f64) -> Result<Self> {
        Self::new(1.0, 1.0, 1.0, 1.0, 5.0 / 6.0, 0.4, 1.0, alpha)
    }

    /// A slender beam (`I_d = 10⁻³`) with the [`BeamConfig::unit`] material.
    pub fn slender(alpha: f64) -> Result<Self> {
        Self::new(1.0, 1.0, 1.0, 1e-3, 5.0 / 6.0, 0.4, 1.0, alpha)
    }

    pub fn validate(&self) -> Result<()> {
        let named = [
            ("rho", self.rho),
            ("area", self.area),
            ("e", self.e),
            ("i_d", self.i_d),
            ("kappa", self.kappa),
            ("g", self.g),
            ("length", self.length),
        ];
        for (name, v) in named {
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::InvalidArgument(format!("{name} must be finite and > 0, got {v}")));
            }
        }
        let a = self.alpha.value();
        if a > MAX_BEAM_ALPHA {
            return Err(Error::InvalidDimension(format!(
                "beam alpha must lie in (0, {MAX_BEAM_ALPHA}], got {a}"
            )));
        }
        Ok(())
    }

    pub fn coordinate_map(&self) -> EffectiveCoordinateMap {
        EffectiveCoordinateMap::x(self.alpha)
    }

    pub fn effective_coordinate(&self, x: f64) -> f64 {
        self.coordinate_map().forward(x)
    }

    pub fn inverse_effective_coordinate(&self, chi: f64) -> f64 {
        self.coordinate_map().inverse(chi)
    }

    /// `Λ = X(L)`.
    pub fn effective_length(&self) -> f64 {
        self.effective_coordinate(self.length)
    }

    /// `√(E I_d / (ρ A))`.
    pub fn bending_wave_speed(&self) -> f64 {
        (self.e * self.i_d / (self.rho * self.area)).sqrt()
    }

    /// The classical (`α = 1`) beam of length `Λ` with the same material.
    pub fn classical_equivalent(&self) -> Self {
        Self {
            alpha: AxisDimension::unit(),
            length: self.effective_length(),
            ..*self
        }
    }
}
