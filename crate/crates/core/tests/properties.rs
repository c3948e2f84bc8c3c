//! Property tests for the invariants of the measure, quadrature, operators,
//! Poisson solvers and beam modules.

use proptest::prelude::*;

use fracdim::altops::{laplacian_from_jet, LaplacianKind, LaplacianSpec, LocalJet};
use fracdim::beam::{characteristic_roots, natural_frequencies, BeamConfig, Convention};
use fracdim::diffops::{
    curl_alpha, curl_alpha_at, div_alpha_at, grad_alpha, grad_alpha_at, scalar_laplacian_at, vector_laplacian_at,
    LameFrame,
};
use fracdim::diffops::fd;
use fracdim::field::{ScalarField, VectorField};
use fracdim::measure::{
    ball_volume, nids_weight, parallelepiped_mass, sphere_area, AxisDimension, EffectiveCoordinateMap, MultiIndex,
    WeightSpec,
};
use fracdim::quadrature::{integrate_1d, integrate_product, Box3, QuadratureSpec, Rule};
use fracdim::solvers::{poisson_solve_analytic, PoissonOperator, PoissonProblem};

/// Rounding floor of a residual evaluated by central differences.
const RESIDUAL_NOISE: f64 = 1e-8;

fn dim(a: f64) -> AxisDimension {
    AxisDimension::new(a).unwrap()
}

fn alpha() -> impl Strategy<Value = f64> {
    0.3..2.4f64
}

fn alphas() -> impl Strategy<Value = [f64; 3]> {
    [0.4..1.6f64, 0.4..1.6f64, 0.4..1.6f64]
}

fn point() -> impl Strategy<Value = [f64; 3]> {
    [0.5..2.0f64, 0.5..2.0f64, 0.5..2.0f64]
}

/// Quadratic form `Σ a_ij X_i X_j + Σ b_i X_i` in effective coordinates.
fn quadratic(frame: &LameFrame, a: [[f64; 3]; 3], b: [f64; 3]) -> ScalarField {
    let maps = [0, 1, 2].map(|k| frame.coordinate(k));
    ScalarField::new(move |p: [f64; 3]| {
        let x = [0, 1, 2].map(|k| maps[k].forward(p[k]));
        let mut s = 0.0;
        for i in 0..3 {
            s += b[i] * x[i];
            for j in 0..3 {
                s += a[i][j] * x[i] * x[j];
            }
        }
        s
    })
}

fn coefficients() -> impl Strategy<Value = ([[f64; 3]; 3], [f64; 3])> {
    (
        [[-1.0..1.0f64, -1.0..1.0f64, -1.0..1.0f64], [-1.0..1.0f64, -1.0..1.0f64, -1.0..1.0f64], [
            -1.0..1.0f64,
            -1.0..1.0f64,
            -1.0..1.0f64,
        ]],
        [-1.0..1.0f64, -1.0..1.0f64, -1.0..1.0f64],
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn effective_coordinate_is_odd_and_increasing(a in alpha(), x in 0.01..10.0f64, dx in 1e-3..1.0f64) {
        let m = EffectiveCoordinateMap::x(dim(a));
        prop_assert_eq!(m.forward(-x), -m.forward(x));
        prop_assert!(m.forward(x + dx) > m.forward(x));
        prop_assert!(m.forward(x) > 0.0);
    }

    #[test]
    fn effective_coordinate_derivative_is_the_weight(a in alpha(), x in 0.1..10.0f64) {
        let m = EffectiveCoordinateMap::x(dim(a));
        let d = fd::derivative_of(|t| m.forward(t), x, 1e-3 * x);
        let w = nids_weight(a, x);
        prop_assert!((d - w).abs() <= 1e-8 * w.max(1.0), "{} vs {}", d, w);
    }

    #[test]
    fn effective_coordinate_round_trip(a in alpha(), x in prop_oneof![-10.0..-0.05f64, 0.05..10.0f64]) {
        let m = EffectiveCoordinateMap::x(dim(a));
        let back = m.inverse(m.forward(x));
        prop_assert!((back - x).abs() <= 1e-13 * x.abs().max(1.0));
    }

    #[test]
    fn ball_volume_is_twice_the_weight_integral(a in alpha(), r in 0.1..5.0f64) {
        let q = QuadratureSpec::default();
        let half = integrate_1d(|_| 1.0, (0.0, r), &WeightSpec::non_integer(dim(a)), &q).unwrap();
        let v = ball_volume(dim(a), r).unwrap();
        prop_assert!((2.0 * half - v).abs() <= 1e-10 * v);
    }

    #[test]
    fn sphere_area_is_twice_the_weight(a in alpha(), r in 0.1..5.0f64) {
        let s = sphere_area(dim(a), r).unwrap();
        let w = 2.0 * nids_weight(a, r);
        prop_assert!((s - w).abs() <= 1e-14 * s.max(1.0));
    }

    #[test]
    fn mass_scales_with_each_edge(al in alphas(), edges in [0.2..3.0f64, 0.2..3.0f64, 0.2..3.0f64], k in 0usize..3, s in 0.5..4.0f64) {
        let m = MultiIndex::relaxed(al).unwrap();
        let base = parallelepiped_mass(&m, edges, 1.7).unwrap();
        let mut bigger = edges;
        bigger[k] *= s;
        let ratio = parallelepiped_mass(&m, bigger, 1.7).unwrap() / base;
        prop_assert!((ratio - s.powf(al[k])).abs() <= 1e-12 * ratio);
    }

    #[test]
    fn separable_integrals_factorize(al in alphas(), lo in -2.0..-0.1f64, hi in 0.1..2.0f64) {
        let q = QuadratureSpec::default();
        let m = MultiIndex::relaxed(al).unwrap();
        let g = [|x: f64| (-x * x).exp(), |x: f64| 1.0 + x * x, |x: f64| x.cos()];
        let full = integrate_product(|p| g[0](p[0]) * g[1](p[1]) * g[2](p[2]), &Box3::cube(lo, hi).unwrap(), &m, &q).unwrap();
        let parts: f64 = (0..3)
            .map(|k| integrate_1d(g[k], (lo, hi), &WeightSpec::non_integer(dim(al[k])), &q).unwrap())
            .product();
        prop_assert!((full - parts).abs() <= 1e-12 * parts.abs());
    }

    #[test]
    fn substitution_and_plain_rules_agree_at_unit_dimension(lo in -3.0..0.0f64, width in 0.1..4.0f64, c in -2.0..2.0f64) {
        let q = QuadratureSpec::default();
        let f = |x: f64| (c * x).sin() + x * x;
        let w = WeightSpec::non_integer(AxisDimension::unit());
        let sub = integrate_1d(f, (lo, lo + width), &w, &q).unwrap();
        let plain = integrate_1d(f, (lo, lo + width), &w, &q.with_rule(Rule::PlainGaussLegendre)).unwrap();
        prop_assert!((sub - plain).abs() <= q.rel_tol * sub.abs().max(1.0));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn curl_of_gradient_vanishes(al in alphas(), (a, b) in coefficients(), p in point()) {
        let frame = LameFrame::new(MultiIndex::relaxed(al).unwrap());
        let f = quadratic(&frame, a, b);
        let c = curl_alpha_at(&grad_alpha(&f, &frame), &frame, p).unwrap();
        prop_assert!(c.iter().all(|v| v.abs() <= 1e-6), "{:?}", c);
    }

    #[test]
    fn divergence_of_curl_vanishes(al in alphas(), (a, b) in coefficients(), (a2, b2) in coefficients(), p in point()) {
        let frame = LameFrame::new(MultiIndex::relaxed(al).unwrap());
        let u = VectorField::new([quadratic(&frame, a, b), quadratic(&frame, a2, b2), quadratic(&frame, a, b2)]);
        let d = div_alpha_at(&curl_alpha(&u, &frame), &frame, p).unwrap();
        prop_assert!(d.abs() <= 1e-6, "{}", d);
    }

    #[test]
    fn laplacian_is_divergence_of_gradient(al in alphas(), (a, b) in coefficients(), p in point()) {
        let frame = LameFrame::new(MultiIndex::relaxed(al).unwrap());
        let f = quadratic(&frame, a, b);
        let lap = scalar_laplacian_at(&f, &frame, p).unwrap();
        let dg = div_alpha_at(&grad_alpha(&f, &frame), &frame, p).unwrap();
        prop_assert!((lap - dg).abs() <= 1e-6);
    }

    #[test]
    fn operators_follow_the_chain_rule(al in alphas(), (a, b) in coefficients(), p in point()) {
        // for F(X) quadratic: ∇F = (A + Aᵀ)X + b and ΔF = 2 tr A
        let frame = LameFrame::new(MultiIndex::relaxed(al).unwrap());
        let f = quadratic(&frame, a, b);
        let x = frame.to_effective(p);
        let g = grad_alpha_at(&f, &frame, p).unwrap();
        for i in 0..3 {
            let want = b[i] + (0..3).map(|j| (a[i][j] + a[j][i]) * x[j]).sum::<f64>();
            prop_assert!((g[i] - want).abs() <= 1e-6, "grad {}: {} vs {}", i, g[i], want);
        }
        let lap = scalar_laplacian_at(&f, &frame, p).unwrap();
        let trace = 2.0 * (a[0][0] + a[1][1] + a[2][2]);
        prop_assert!((lap - trace).abs() <= 1e-6, "{} vs {}", lap, trace);
    }

    #[test]
    fn vector_laplacian_commutes_with_gradient(al in alphas(), (a, b) in coefficients(), p in point()) {
        let frame = LameFrame::new(MultiIndex::relaxed(al).unwrap());
        let f = quadratic(&frame, a, b);
        let vl = vector_laplacian_at(&grad_alpha(&f, &frame), &frame, p).unwrap();
        // the Laplacian of a quadratic is constant, so its gradient is zero
        prop_assert!(vl.iter().all(|v| v.abs() <= 1e-5), "{:?}", vl);
    }

    #[test]
    fn k_family_identities(a in 0.3..1.9f64, p in point(), v in -2.0..2.0f64, g in [-2.0..2.0f64, -2.0..2.0f64, -2.0..2.0f64], h in [-2.0..2.0f64, -2.0..2.0f64, -2.0..2.0f64]) {
        let jet = LocalJet { value: v, grad: g, hess_diag: h };
        let m = MultiIndex::relaxed([a; 3]).unwrap();
        let eval = |k: LaplacianKind| laplacian_from_jet(&LaplacianSpec::anisotropic(k, m).unwrap(), p, &jet).unwrap();
        let scale = 1.0 + eval(LaplacianKind::K2).abs();
        prop_assert!((eval(LaplacianKind::K1) - eval(LaplacianKind::Kl(1.0 - a / 2.0))).abs() <= 1e-10 * scale);
        prop_assert!((eval(LaplacianKind::K2) - eval(LaplacianKind::Kl(0.5))).abs() <= 1e-10 * scale);
        prop_assert!((eval(LaplacianKind::K1) - eval(LaplacianKind::PS)).abs() <= 1e-10 * scale);
        prop_assert!((eval(LaplacianKind::ZmnApprox) - eval(LaplacianKind::K2)).abs() <= 1e-10 * scale);
    }

    #[test]
    fn poisson_residual_holds_off_the_construction_grid(a in 0.4..1.4f64, k2 in any::<bool>(), left in -2.0..2.0f64, right in -2.0..2.0f64, c in -1.0..1.0f64) {
        let op = if k2 { PoissonOperator::K2 } else { PoissonOperator::News };
        let problem = PoissonProblem::dirichlet(op, a, move |x| 1.0 + c * x, (0.1, 2.0), (left, right)).unwrap();
        let s = poisson_solve_analytic(&problem).unwrap();
        let fresh = s.residual_on(500).unwrap();
        // both residuals are differenced numerically; below ~1e-9 they are rounding noise
        prop_assert!(fresh <= 2.0 * s.residual_norm + RESIDUAL_NOISE, "{} vs {}", fresh, s.residual_norm);
        prop_assert!((s.eval(0.1) - left).abs() <= 1e-9 && (s.eval(2.0) - right).abs() <= 1e-9);
    }

    #[test]
    fn roots_increase_and_spectra_depend_on_effective_length(a in 0.3..1.5f64, b in 0.3..1.5f64, big_l in 0.5..3.0f64) {
        // two beams with the same X(L)
        let len = |alpha: f64| EffectiveCoordinateMap::x(dim(alpha)).inverse(big_l);
        let ca = BeamConfig::new(1.0, 1.0, 1.0, 1.0, 5.0 / 6.0, 0.4, len(a), a).unwrap();
        let cb = BeamConfig::new(1.0, 1.0, 1.0, 1.0, 5.0 / 6.0, 0.4, len(b), b).unwrap();
        let ka = characteristic_roots(&ca, 6, Convention::Effective).unwrap();
        let kb = characteristic_roots(&cb, 6, Convention::Effective).unwrap();
        prop_assert!(ka.windows(2).all(|w| w[1] > w[0]));
        let (wa, wb) = (natural_frequencies(&ca, &ka), natural_frequencies(&cb, &kb));
        for (x, y) in wa.iter().zip(&wb) {
            prop_assert!((x - y).abs() <= 1e-10 * x, "{} vs {}", x, y);
        }
    }
}
