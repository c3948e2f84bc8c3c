//! Dimensions, densities of states and the closed-form geometry of
//! non-integer dimensional product spaces.
//!
//! Each axis `k` carries a real dimension `α_k`; the single-variable measure
//! along it is `dμ = c₁(α_k, x) dx` and the total dimension is `D = Σ α_k`.

use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::gamma::gamma;

/// Dimension of a single axis. Always finite and strictly positive.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct AxisDimension(f64);

impl AxisDimension {
    pub fn new(alpha: f64) -> Result<Self> {
        if !alpha.is_finite() || alpha <= 0.0 {
            return Err(Error::InvalidDimension(format!(
                "alpha must be finite and > 0, got {alpha}"
            )));
        }
        Ok(Self(alpha))
    }

    /// The non-fractal axis, `α = 1`.
    pub const fn unit() -> Self {
        Self(1.0)
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.0
    }
}

impl TryFrom<f64> for AxisDimension {
    type Error = Error;
    fn try_from(value: f64) -> Result<Self> {
        Self::new(value)
    }
}

impl From<AxisDimension> for f64 {
    fn from(value: AxisDimension) -> f64 {
        value.0
    }
}

/// Per-axis dimensions `(α₁, α₂, α₃)`.
///
/// The total dimension `D` is always recomputed from the axes. By default
/// `0 < D ≤ 3` is enforced; [`MultiIndex::relaxed`] lifts the upper bound
/// for media where some `α_k > 1`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MultiIndex {
    alphas: [AxisDimension; 3],
    relaxed: bool,
}

impl MultiIndex {
    pub fn new(alphas: [f64; 3]) -> Result<Self> {
        Self::build(alphas, false)
    }

    pub fn relaxed(alphas: [f64; 3]) -> Result<Self> {
        Self::build(alphas, true)
    }

    pub fn isotropic(alpha: f64) -> Result<Self> {
        Self::new([alpha; 3])
    }

    /// Classical three-dimensional space.
    pub fn euclidean() -> Self {
        Self {
            alphas: [AxisDimension::unit(); 3],
            relaxed: false,
        }
    }

    fn build(alphas: [f64; 3], relaxed: bool) -> Result<Self> {
        let axes = [
            AxisDimension::new(alphas[0])?,
            AxisDimension::new(alphas[1])?,
            AxisDimension::new(alphas[2])?,
        ];
        let total: f64 = alphas.iter().sum();
        // small slack so that e.g. (0.9, 1.1, 1.0) is not rejected by rounding
        if !relaxed && total > 3.0 + 4.0 * f64::EPSILON {
            return Err(Error::InvalidDimension(format!(
                "total dimension D = {total} exceeds 3 (use a relaxed multi-index)"
            )));
        }
        Ok(Self {
            alphas: axes,
            relaxed,
        })
    }

    #[inline]
    pub fn alpha(&self, axis: usize) -> f64 {
        self.alphas[axis].value()
    }

    pub fn axis(&self, axis: usize) -> AxisDimension {
        self.alphas[axis]
    }

    pub fn alphas(&self) -> [f64; 3] {
        [self.alpha(0), self.alpha(1), self.alpha(2)]
    }

    /// Total dimension `D = α₁ + α₂ + α₃`.
    pub fn total(&self) -> f64 {
        self.alphas.iter().map(|a| a.value()).sum()
    }

    pub fn is_relaxed(&self) -> bool {
        self.relaxed
    }

    pub fn is_isotropic(&self) -> bool {
        self.alpha(0) == self.alpha(1) && self.alpha(1) == self.alpha(2)
    }
}

/// Box-counting dimensions of the three coordinate cross-sections.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CrossSectionDims {
    pub d_xy: f64,
    pub d_xz: f64,
    pub d_yz: f64,
}

impl CrossSectionDims {
    pub fn new(d_xy: f64, d_xz: f64, d_yz: f64) -> Result<Self> {
        for (name, d) in [("d_xy", d_xy), ("d_xz", d_xz), ("d_yz", d_yz)] {
            if !(d > 0.0 && d < 2.0) {
                return Err(Error::InvalidDimension(format!(
                    "{name} must lie in (0, 2), got {d}"
                )));
            }
        }
        Ok(Self { d_xy, d_xz, d_yz })
    }

    /// Axis dimensions of a medium with mass dimension `mass_dim`: each axis
    /// takes `D` minus the dimension of the cross-section perpendicular to it.
    pub fn multi_index(&self, mass_dim: f64) -> Result<MultiIndex> {
        MultiIndex::relaxed([
            axis_dimension_from_cross_section(mass_dim, self.d_yz)?.value(),
            axis_dimension_from_cross_section(mass_dim, self.d_xz)?.value(),
            axis_dimension_from_cross_section(mass_dim, self.d_xy)?.value(),
        ])
    }
}

/// `α = D − d_⊥`. `d_⊥ = 2` is accepted as the non-fractal limit.
pub fn axis_dimension_from_cross_section(mass_dim: f64, d_perp: f64) -> Result<AxisDimension> {
    if !(d_perp > 0.0 && d_perp <= 2.0) {
        return Err(Error::InvalidDimension(format!(
            "cross-section dimension must lie in (0, 2], got {d_perp}"
        )));
    }
    if !(mass_dim > 0.0 && mass_dim.is_finite()) {
        return Err(Error::InvalidDimension(format!(
            "mass dimension must be > 0, got {mass_dim}"
        )));
    }
    AxisDimension::new(mass_dim - d_perp)
}

/// Density-of-states family.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum WeightFamily {
    /// `π^{α/2}/Γ(α/2) · |x|^{α−1}`
    NonInteger,
    /// `|x − a|^{α−1}/Γ(α)`
    RiemannLiouville { a: f64 },
    /// `α · |b − x|^{α−1}`
    ModifiedRl { b: f64 },
}

/// A density of states along one axis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WeightSpec {
    pub family: WeightFamily,
    pub alpha: AxisDimension,
}

impl WeightSpec {
    pub fn non_integer(alpha: AxisDimension) -> Self {
        Self {
            family: WeightFamily::NonInteger,
            alpha,
        }
    }

    pub fn riemann_liouville(alpha: AxisDimension, a: f64) -> Self {
        Self {
            family: WeightFamily::RiemannLiouville { a },
            alpha,
        }
    }

    pub fn modified_rl(alpha: AxisDimension, b: f64) -> Self {
        Self {
            family: WeightFamily::ModifiedRl { b },
            alpha,
        }
    }

    /// Constant prefactor of the family.
    pub fn prefactor(&self) -> f64 {
        let alpha = self.alpha.value();
        match self.family {
            WeightFamily::NonInteger => nids_prefactor(alpha),
            WeightFamily::RiemannLiouville { .. } => 1.0 / gamma(alpha),
            WeightFamily::ModifiedRl { .. } => alpha,
        }
    }

    /// Distance from the singular point of the family.
    fn distance(&self, x: f64) -> f64 {
        match self.family {
            WeightFamily::NonInteger => x.abs(),
            WeightFamily::RiemannLiouville { a } => (x - a).abs(),
            WeightFamily::ModifiedRl { b } => (b - x).abs(),
        }
    }

    /// Evaluate the density of states `c₁(α, x)`.
    ///
    /// At the singular point the value is the limit when it exists
    /// (`1` for `α = 1`, `0` for `α > 1`); for `α < 1` it is a
    /// [`Error::DomainError`].
    pub fn eval(&self, x: f64) -> Result<f64> {
        let alpha = self.alpha.value();
        let r = self.distance(x);
        if r == 0.0 {
            return if alpha < 1.0 {
                Err(Error::DomainError(format!(
                    "density of states with alpha = {alpha} < 1 diverges at its singular point"
                )))
            } else if alpha == 1.0 {
                Ok(self.prefactor())
            } else {
                Ok(0.0)
            };
        }
        Ok(self.prefactor() * r.powf(alpha - 1.0))
    }
}

/// `c(α) = π^{α/2}/Γ(α/2)`, the normalization of the non-integer
/// dimensional density of states (no factor 2).
#[inline]
pub fn nids_prefactor(alpha: f64) -> f64 {
    PI.powf(0.5 * alpha) / gamma(0.5 * alpha)
}

/// Density of states `c₁(α, x)` of the selected family.
pub fn weight(spec: &WeightSpec, x: f64) -> Result<f64> {
    spec.eval(x)
}

/// Non-integer dimensional density of states `π^{α/2}/Γ(α/2) |x|^{α−1}` for
/// `x ≠ 0`. Hot-path variant without the singular-point check.
#[inline]
pub fn nids_weight(alpha: f64, x: f64) -> f64 {
    nids_prefactor(alpha) * x.abs().powf(alpha - 1.0)
}

/// Which effective coordinate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CoordinateKind {
    /// Non-integer dimensional space, `dX = π^{α/2}/Γ(α/2)|x|^{α−1} dx`.
    X,
    /// Fractional space, `dQ = |x|^{α−1}/Γ(α) dx`.
    Q,
}

/// Odd, strictly increasing map `x ↦ k · sgn(x)|x|^α` whose derivative is the
/// density of states of the corresponding family.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EffectiveCoordinateMap {
    alpha: AxisDimension,
    kind: CoordinateKind,
    scale: f64,
}

impl EffectiveCoordinateMap {
    pub fn new(alpha: AxisDimension, kind: CoordinateKind) -> Self {
        let a = alpha.value();
        let scale = match kind {
            CoordinateKind::X if a == 1.0 => 1.0,
            CoordinateKind::X => PI.powf(0.5 * a) / (2.0 * gamma(0.5 * a + 1.0)),
            CoordinateKind::Q => 1.0 / gamma(a + 1.0),
        };
        Self { alpha, kind, scale }
    }

    /// The non-integer dimensional coordinate `X(α, x)`.
    pub fn x(alpha: AxisDimension) -> Self {
        Self::new(alpha, CoordinateKind::X)
    }

    /// The fractional-space coordinate `Q(α, x)`.
    pub fn q(alpha: AxisDimension) -> Self {
        Self::new(alpha, CoordinateKind::Q)
    }

    pub fn alpha(&self) -> AxisDimension {
        self.alpha
    }

    pub fn kind(&self) -> CoordinateKind {
        self.kind
    }

    /// Multiplier `k` in `k · sgn(x)|x|^α`.
    pub fn scale(&self) -> f64 {
        self.scale
    }

    #[inline]
    pub fn forward(&self, x: f64) -> f64 {
        let a = self.alpha.value();
        if a == 1.0 {
            return self.scale * x;
        }
        self.scale * x.signum() * x.abs().powf(a)
    }

    #[inline]
    pub fn inverse(&self, big_x: f64) -> f64 {
        let a = self.alpha.value();
        if a == 1.0 {
            return big_x / self.scale;
        }
        if big_x == 0.0 {
            return 0.0;
        }
        big_x.signum() * (big_x.abs() / self.scale).powf(1.0 / a)
    }

    /// `dX/dx`, the density of states of the matching family (anchored at 0).
    #[inline]
    pub fn derivative(&self, x: f64) -> f64 {
        let a = self.alpha.value();
        self.scale * a * x.abs().powf(a - 1.0)
    }
}

pub fn effective_coordinate(map: &EffectiveCoordinateMap, x: f64) -> f64 {
    map.forward(x)
}

pub fn inverse_effective_coordinate(map: &EffectiveCoordinateMap, big_x: f64) -> f64 {
    map.inverse(big_x)
}

fn check_radius(r: f64) -> Result<()> {
    if r < 0.0 || r.is_nan() {
        return Err(Error::NegativeRadius(r));
    }
    Ok(())
}

/// Volume of the `α`-dimensional ball, `π^{α/2}/Γ(α/2+1) · R^α`.
pub fn ball_volume(alpha: AxisDimension, radius: f64) -> Result<f64> {
    check_radius(radius)?;
    let a = alpha.value();
    Ok(PI.powf(0.5 * a) / gamma(0.5 * a + 1.0) * radius.powf(a))
}

/// Area of the sphere bounding the `α`-dimensional ball,
/// `S_{α−1}(r) = 2π^{α/2}/Γ(α/2) · r^{α−1}`.
pub fn sphere_area(alpha: AxisDimension, radius: f64) -> Result<f64> {
    check_radius(radius)?;
    let a = alpha.value();
    if radius == 0.0 {
        return Ok(match a {
            a if a < 1.0 => f64::INFINITY,
            a if a == 1.0 => 2.0,
            _ => 0.0,
        });
    }
    Ok(2.0 * nids_prefactor(a) * radius.powf(a - 1.0))
}

/// Mass of a rectangular parallelepiped `[0,L₁]×[0,L₂]×[0,L₃]` of a medium
/// with uniform density `rho0` under the product measure.
pub fn parallelepiped_mass(alphas: &MultiIndex, edges: [f64; 3], rho0: f64) -> Result<f64> {
    if !(rho0 > 0.0 && rho0.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "density rho0 must be > 0, got {rho0}"
        )));
    }
    let mut mass = rho0;
    for (k, &len) in edges.iter().enumerate() {
        if !(len > 0.0 && len.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "edge L{} must be > 0, got {len}",
                k + 1
            )));
        }
        let a = alphas.alpha(k);
        mass *= nids_prefactor(a) / a * len.powf(a);
    }
    Ok(mass)
}

/// Mass–radius power law of an isotropic fractal medium, `M₀ (R/R₀)^D`.
pub fn ball_mass_power_law(m0: f64, radius: f64, r0: f64, mass_dim: f64) -> Result<f64> {
    check_radius(radius)?;
    if !(r0 > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "characteristic size R0 must be > 0, got {r0}"
        )));
    }
    Ok(m0 * (radius / r0).powf(mass_dim))
}

/// Anisotropic mass power law `M₀ ∏ (L_k/R₀)^{α_k}`.
pub fn parallelepiped_mass_power_law(
    m0: f64,
    edges: [f64; 3],
    r0: f64,
    alphas: &MultiIndex,
) -> Result<f64> {
    if !(r0 > 0.0) {
        return Err(Error::InvalidArgument(format!(
            "characteristic size R0 must be > 0, got {r0}"
        )));
    }
    Ok((0..3).fold(m0, |m, k| m * (edges[k] / r0).powf(alphas.alpha(k))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ad(a: f64) -> AxisDimension {
        AxisDimension::new(a).unwrap()
    }

    #[test]
    fn rejects_bad_dimensions() {
        assert!(AxisDimension::new(0.0).is_err());
        assert!(AxisDimension::new(-1.0).is_err());
        assert!(AxisDimension::new(f64::NAN).is_err());
        assert!(AxisDimension::new(f64::INFINITY).is_err());
        assert!(MultiIndex::new([1.2, 1.0, 1.0]).is_err());
        assert_eq!(MultiIndex::relaxed([1.2, 1.0, 1.0]).unwrap().total(), 3.2);
        assert_eq!(MultiIndex::new([0.9, 0.8, 0.8]).unwrap().total(), 2.5);
    }

    #[test]
    fn weight_examples() {
        let w = weight(&WeightSpec::non_integer(ad(1.0)), 3.7).unwrap();
        assert!((w - 1.0).abs() < 1e-15);
        let w = weight(&WeightSpec::non_integer(ad(2.0)), 2.0).unwrap();
        assert!((w - 2.0 * PI).abs() < 1e-13);
        let w = weight(&WeightSpec::riemann_liouville(ad(1.0), 0.0), 5.0).unwrap();
        assert_eq!(w, 1.0);
        let w = weight(&WeightSpec::modified_rl(ad(1.0), 10.0), 5.0).unwrap();
        assert_eq!(w, 1.0);
    }

    #[test]
    fn weight_at_singular_point() {
        let half = WeightSpec::non_integer(ad(0.5));
        assert!(matches!(weight(&half, 0.0), Err(Error::DomainError(_))));
        assert_eq!(weight(&WeightSpec::non_integer(ad(1.5)), 0.0).unwrap(), 0.0);
        assert!((weight(&WeightSpec::non_integer(ad(1.0)), 0.0).unwrap() - 1.0).abs() < 1e-15);
        let rl = WeightSpec::riemann_liouville(ad(0.7), 2.0);
        assert!(weight(&rl, 2.0).is_err());
        assert!(weight(&rl, 0.0).is_ok());
        let mrl = WeightSpec::modified_rl(ad(0.7), 3.0);
        assert!(weight(&mrl, 3.0).is_err());
    }

    #[test]
    fn effective_coordinate_examples() {
        let x1 = EffectiveCoordinateMap::x(ad(1.0));
        for x0 in [-3.0, 0.0, 0.25, 17.5] {
            assert!((x1.forward(x0) - x0).abs() < 1e-14 * (1.0 + x0.abs()));
        }
        assert_eq!(EffectiveCoordinateMap::x(ad(0.4)).forward(0.0), 0.0);
        let x2 = EffectiveCoordinateMap::x(ad(2.0));
        assert!((x2.forward(1.0) - PI / 2.0).abs() < 1e-14);
        assert!((x2.inverse(PI / 2.0) - 1.0).abs() < 1e-14);
        assert!((x1.inverse(2.5) - 2.5).abs() < 1e-14);
        let q = EffectiveCoordinateMap::q(ad(2.0));
        assert!((q.forward(3.0) - 4.5).abs() < 1e-13);
        assert!((q.forward(-3.0) + 4.5).abs() < 1e-13);
    }

    #[test]
    fn round_trips() {
        for alpha in [0.5, 1.3] {
            let map = EffectiveCoordinateMap::x(ad(alpha));
            for x in [0.1, -0.1, 7.0, -7.0] {
                let back = map.inverse(map.forward(x));
                assert!(((back - x) / x).abs() < 1e-13, "alpha {alpha} x {x}");
            }
        }
    }

    #[test]
    fn ball_and_sphere_examples() {
        assert!((ball_volume(ad(1.0), 5.0).unwrap() - 10.0).abs() < 1e-13);
        assert!((ball_volume(ad(2.0), 1.0).unwrap() - PI).abs() < 1e-14);
        assert!((ball_volume(ad(3.0), 2.0).unwrap() - 32.0 * PI / 3.0).abs() < 1e-12);
        assert!((sphere_area(ad(3.0), 1.0).unwrap() - 4.0 * PI).abs() < 1e-13);
        assert!((sphere_area(ad(2.0), 3.0).unwrap() - 6.0 * PI).abs() < 1e-13);
        for r in [0.1, 1.0, 42.0] {
            assert!((sphere_area(ad(1.0), r).unwrap() - 2.0).abs() < 1e-14);
        }
        assert!(matches!(
            ball_volume(ad(1.0), -1.0),
            Err(Error::NegativeRadius(_))
        ));
        assert!(sphere_area(ad(1.0), -0.5).is_err());
    }

    #[test]
    fn cross_section_examples() {
        assert_eq!(axis_dimension_from_cross_section(3.0, 2.0).unwrap().value(), 1.0);
        assert!((axis_dimension_from_cross_section(2.5, 1.8).unwrap().value() - 0.7).abs() < 1e-15);
        assert!((axis_dimension_from_cross_section(2.7, 1.262).unwrap().value() - 1.438).abs() < 1e-15);
        assert!(axis_dimension_from_cross_section(1.5, 1.8).is_err());
        assert!(axis_dimension_from_cross_section(2.5, 2.1).is_err());
        assert!(axis_dimension_from_cross_section(2.0, 2.0).is_err());
        let cs = CrossSectionDims::new(1.9, 1.8, 1.7).unwrap();
        let mi = cs.multi_index(2.6).unwrap();
        assert!((mi.alpha(0) - 0.9).abs() < 1e-15);
        assert!((mi.alpha(2) - 0.7).abs() < 1e-15);
    }

    #[test]
    fn mass_examples() {
        let unit = MultiIndex::euclidean();
        assert!((parallelepiped_mass(&unit, [2.0, 3.0, 4.0], 1.0).unwrap() - 24.0).abs() < 1e-12);
        let mi = MultiIndex::new([0.5, 1.0, 1.0]).unwrap();
        let m = parallelepiped_mass(&mi, [1.0; 3], 1.0).unwrap();
        // π^{1/4}/(0.5 Γ(1/4)), evaluated at 25 digits
        assert!((m - 0.734_406_291_631_804_688_11).abs() < 1e-13);
        let mi = MultiIndex::new([0.7, 0.9, 1.2]).unwrap();
        let a = parallelepiped_mass(&mi, [1.5, 2.0, 3.0], 2.0).unwrap();
        let b = parallelepiped_mass(&mi, [3.0, 2.0, 3.0], 2.0).unwrap();
        assert!((b / a - 2f64.powf(0.7)).abs() < 1e-14);
        assert!(parallelepiped_mass(&mi, [0.0, 1.0, 1.0], 1.0).is_err());
        assert!(parallelepiped_mass(&mi, [1.0, 1.0, 1.0], 0.0).is_err());
    }

    #[test]
    fn power_laws() {
        assert!((ball_mass_power_law(2.0, 8.0, 2.0, 2.5).unwrap() - 64.0).abs() < 1e-12);
        let mi = MultiIndex::new([0.5, 1.0, 1.0]).unwrap();
        let m = parallelepiped_mass_power_law(1.0, [4.0, 2.0, 3.0], 1.0, &mi).unwrap();
        assert!((m - 12.0).abs() < 1e-12);
    }

    proptest! {
        #[test]
        fn unit_alpha_weight_is_one(x in prop_oneof![-50.0..-1e-6f64, 1e-6..50.0f64], a in -5.0..5.0f64) {
            for spec in [
                WeightSpec::non_integer(AxisDimension::unit()),
                WeightSpec::riemann_liouville(AxisDimension::unit(), a),
                WeightSpec::modified_rl(AxisDimension::unit(), a),
            ] {
                prop_assert!((weight(&spec, x).unwrap() - 1.0).abs() < 1e-15);
            }
        }

        #[test]
        fn nids_weight_positive(alpha in 0.05..3.0f64, x in prop_oneof![-20.0..-1e-6f64, 1e-6..20.0f64]) {
            prop_assert!(weight(&WeightSpec::non_integer(ad(alpha)), x).unwrap() > 0.0);
        }

        #[test]
        fn map_is_odd_and_monotone(alpha in 0.1..3.0f64, x in 1e-3..30.0f64, dx in 1e-6..1.0f64) {
            let map = EffectiveCoordinateMap::x(ad(alpha));
            prop_assert_eq!(map.forward(-x), -map.forward(x));
            prop_assert!(map.forward(x + dx) > map.forward(x));
            let back = map.inverse(map.forward(x));
            prop_assert!(((back - x) / x).abs() < 1e-13);
        }

        #[test]
        fn derivative_of_x_is_nids_weight(alpha in 0.1..3.0f64, x in 0.01..30.0f64) {
            let map = EffectiveCoordinateMap::x(ad(alpha));
            let w = nids_weight(alpha, x);
            prop_assert!(((map.derivative(x) - w) / w).abs() < 1e-13);
        }

        #[test]
        fn sphere_area_is_twice_weight(alpha in 0.1..3.0f64, r in 1e-3..30.0f64) {
            let s = sphere_area(ad(alpha), r).unwrap();
            let w = weight(&WeightSpec::non_integer(ad(alpha)), r).unwrap();
            prop_assert!((s - 2.0 * w).abs() <= 1e-14 * s);
        }
    }
}
