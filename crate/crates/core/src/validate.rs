//! Identity and closed-form checks across the library, grouped by topic.
//!
//! Each check returns measured errors next to the tolerance it is held to.
//! Nothing here reads the clock or unseeded randomness, so a report is a
//! pure function of its [`SuiteOptions`].

use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::altops::{
    apply_laplacian, first_order_square, laplacian_from_jet, news_minus_ps, LaplacianKind, LaplacianSpec, LocalJet,
};
use crate::battery::{sample_points, TestField, BATTERY};
use crate::beam::{
    characteristic_roots, euler_bernoulli_residual, frequency_residual, frequency_roots, modal_inner_product,
    natural_frequencies, transfer_solution, BeamConfig, Convention, ModeShape, ResidualGrid, TimoshenkoModel,
};
use crate::diffops::{
    curl_alpha, curl_alpha_at, div_alpha_at, grad_alpha, grad_alpha_at, scalar_laplacian_at, vector_laplacian_at,
    LameFrame,
};
use crate::diffops::fd;
use crate::error::Result;
use crate::field::{ScalarField, VectorField};
use crate::measure::{ball_volume, parallelepiped_mass, sphere_area, AxisDimension, MultiIndex, WeightSpec};
use crate::quadrature::{
    angular_integral_phi, angular_integral_theta, angular_phi_closed_form, angular_theta_closed_form, integrate_1d,
    integrate_product, mc_integrate_product, radial_integral, Box3, QuadratureSpec,
};
use crate::solvers::{
    apply_operator, max_difference, poisson_homogeneous_basis, poisson_solve_analytic, poisson_solve_numeric,
    PoissonOperator, PoissonProblem,
};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Measurement {
    pub topic: String,
    pub name: String,
    /// Largest error observed (relative or absolute, as the name says).
    pub value: f64,
    pub tolerance: f64,
    /// The tolerance is a floor rather than a ceiling.
    pub lower_bound: bool,
    pub passed: bool,
}

impl Measurement {
    fn new(topic: &str, name: &str, value: f64, tolerance: f64) -> Self {
        Self {
            topic: topic.into(),
            name: name.into(),
            value,
            tolerance,
            lower_bound: false,
            passed: value <= tolerance,
        }
    }

    /// A check that passes when `value` exceeds `floor`.
    fn at_least(topic: &str, name: &str, value: f64, floor: f64) -> Self {
        Self {
            topic: topic.into(),
            name: name.into(),
            value,
            tolerance: floor,
            lower_bound: true,
            passed: value >= floor,
        }
    }

    /// Multiply the tolerance by `scale`; floors are left alone.
    pub fn scaled(mut self, scale: f64) -> Self {
        if !self.lower_bound {
            self.tolerance *= scale;
            self.passed = self.value <= self.tolerance;
        }
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SuiteOptions {
    pub seed: u64,
    pub mc_samples: usize,
    /// Multiplies every tolerance. Values above 1 loosen the suite.
    pub tol_scale: f64,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        Self {
            seed: 20_240_601,
            mc_samples: 1_000_000,
            tol_scale: 1.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub options: SuiteOptions,
    pub measurements: Vec<Measurement>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.measurements.iter().all(|m| m.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Measurement> {
        self.measurements.iter().filter(|m| !m.passed)
    }
}

fn rel(got: f64, want: f64) -> f64 {
    ((got - want) / want).abs()
}

fn nids(alpha: f64) -> WeightSpec {
    WeightSpec::non_integer(AxisDimension::new(alpha).expect("positive"))
}

/// Ball volumes and sphere areas against quadrature of the weight.
pub fn volumes_and_areas() -> Result<Vec<Measurement>> {
    let q = QuadratureSpec::default();
    let (mut vol, mut area) = (0.0f64, 0.0f64);
    for alpha in [0.3, 0.5, 1.0, 1.5, 2.0, 2.9] {
        let ad = AxisDimension::new(alpha)?;
        let volume_q = |r: f64| integrate_1d(|_| 1.0, (-r, r), &nids(alpha), &q);
        for r in [0.5, 1.0, 4.0] {
            vol = vol.max(rel(volume_q(r)?, ball_volume(ad, r)?));
            // the sphere bounds the ball: S = dV/dR
            let dv = fd::derivative(volume_q, r, 0.01 * r)?;
            area = area.max(rel(dv, sphere_area(ad, r)?));
        }
    }
    Ok(vec![
        Measurement::new("measure", "ball volume vs quadrature (rel)", vol, 1e-10),
        Measurement::new("measure", "sphere area vs dV/dR of quadrature (rel)", area, 1e-10),
    ])
}

/// Gaussian integral `π^{D/2}` by product quadrature, by the radial
/// reduction and by Monte Carlo.
pub fn spherical_reduction(seed: u64, samples: usize) -> Result<Vec<Measurement>> {
    let q = QuadratureSpec::default();
    let gauss = |p: [f64; 3]| (-(p[0] * p[0] + p[1] * p[1] + p[2] * p[2])).exp();
    let (mut product, mut radial, mut mc_sigma) = (0.0f64, 0.0f64, 0.0f64);
    for d in [1.5, 2.0, 2.5, 3.0] {
        let want = PI.powf(0.5 * d);
        let alphas = MultiIndex::isotropic(d / 3.0)?;
        let big = Box3::cube(-9.0, 9.0)?;
        product = product.max(rel(integrate_product(gauss, &big, &alphas, &q)?, want));
        radial = radial.max(rel(radial_integral(|r| (-r * r).exp(), d, 9.0, &q)?, want));
        // the sampled box is smaller; the mass outside [−5, 5]³ is below 1e-10
        let boxed = Box3::cube(-5.0, 5.0)?;
        let mc = mc_integrate_product(gauss, &boxed, &alphas, seed, samples)?;
        mc_sigma = mc_sigma.max((mc.estimate - want).abs() / mc.stderr);
    }
    Ok(vec![
        Measurement::new("quadrature", "Gaussian product integral vs pi^(D/2) (rel)", product, 1e-6),
        Measurement::new("quadrature", "Gaussian radial integral vs pi^(D/2) (rel)", radial, 1e-6),
        Measurement::new("quadrature", "Monte Carlo deviation in standard errors", mc_sigma, 4.0),
    ])
}

/// Angular integrals against their Γ-function closed forms.
pub fn angular_identities() -> Result<Vec<Measurement>> {
    let q = QuadratureSpec::default();
    let grid: Vec<f64> = (0..5).map(|i| 0.4 + 2.1 * i as f64 / 4.0).collect();
    let (mut phi, mut theta) = (0.0f64, 0.0f64);
    for &a in &grid {
        for &b in &grid {
            phi = phi.max(rel(angular_integral_phi(a, b, &q)?, angular_phi_closed_form(a, b)));
            theta = theta.max(rel(angular_integral_theta(a, b, &q)?, angular_theta_closed_form(a, b)));
        }
    }
    Ok(vec![
        Measurement::new("quadrature", "azimuthal integral vs closed form (rel)", phi, 1e-8),
        Measurement::new("quadrature", "polar integral vs closed form (rel)", theta, 1e-8),
    ])
}

/// Multi-indices used by the anisotropic identity checks.
pub const ANISOTROPIC: [[f64; 3]; 3] = [[0.7, 1.2, 0.9], [0.5, 0.8, 1.0], [0.6, 0.9, 1.3]];

fn max_abs(v: [f64; 3]) -> f64 {
    v.iter().fold(0.0f64, |m, x| m.max(x.abs()))
}

/// Monomial `x^a y^b z^c`.
#[derive(Clone, Copy)]
struct Monomial([i32; 3]);

impl Monomial {
    fn all(max_degree: i32) -> Vec<Monomial> {
        let mut out = Vec::new();
        for a in 0..=max_degree {
            for b in 0..=max_degree - a {
                for c in 0..=max_degree - a - b {
                    out.push(Monomial([a, b, c]));
                }
            }
        }
        out
    }

    fn eval(&self, p: [f64; 3]) -> f64 {
        (0..3).map(|k| p[k].powi(self.0[k])).product()
    }

    /// `∂^n/∂x_k^n`.
    fn diff(&self, k: usize, p: [f64; 3], n: i32) -> f64 {
        let e = self.0[k];
        if n > e {
            return 0.0;
        }
        let coef: i32 = (0..n).map(|j| e - j).product();
        let mut q = self.0;
        q[k] -= n;
        coef as f64 * Monomial(q).eval(p)
    }

    fn field(self) -> ScalarField {
        ScalarField::new(move |p| self.eval(p))
    }
}

/// `curl∘grad = 0`, `div∘curl = 0`, Laplacian = div∘grad, and the classical
/// limit on low-degree monomials.
pub fn vector_identities() -> Result<Vec<Measurement>> {
    let points = sample_points(6, 0.5, 2.0);
    let (mut cg, mut dc, mut lap) = (0.0f64, 0.0f64, 0.0f64);
    for alphas in ANISOTROPIC {
        let frame = LameFrame::new(MultiIndex::new(alphas)?);
        for (i, t) in BATTERY.iter().enumerate() {
            let f = t.field();
            let grad = grad_alpha(&f, &frame);
            let u = VectorField::new([
                f.clone(),
                BATTERY[(i + 1) % BATTERY.len()].field(),
                BATTERY[(i + 2) % BATTERY.len()].field(),
            ]);
            let curl = curl_alpha(&u, &frame);
            for &p in &points {
                cg = cg.max(max_abs(curl_alpha_at(&grad, &frame, p)?));
                dc = dc.max(div_alpha_at(&curl, &frame, p)?.abs());
                lap = lap.max((scalar_laplacian_at(&f, &frame, p)? - div_alpha_at(&grad, &frame, p)?).abs());
            }
        }
    }

    let flat = LameFrame::euclidean();
    let monos = Monomial::all(3);
    let pts = sample_points(4, -1.5, 1.5);
    let mut classical = 0.0f64;
    for (i, m) in monos.iter().enumerate() {
        let f = m.field();
        let (m2, m3) = (monos[(i + 7) % monos.len()], monos[(i + 13) % monos.len()]);
        let u = VectorField::new([f.clone(), m2.field(), m3.field()]);
        let comps = [*m, m2, m3];
        for &p in &pts {
            let g = grad_alpha_at(&f, &flat, p)?;
            let want_g = [0, 1, 2].map(|k| m.diff(k, p, 1));
            classical = classical.max(max_abs([0, 1, 2].map(|k| g[k] - want_g[k])));
            let want_div: f64 = (0..3).map(|k| comps[k].diff(k, p, 1)).sum();
            classical = classical.max((div_alpha_at(&u, &flat, p)? - want_div).abs());
            let c = curl_alpha_at(&u, &flat, p)?;
            let want_c = [
                comps[2].diff(1, p, 1) - comps[1].diff(2, p, 1),
                comps[0].diff(2, p, 1) - comps[2].diff(0, p, 1),
                comps[1].diff(0, p, 1) - comps[0].diff(1, p, 1),
            ];
            classical = classical.max(max_abs([0, 1, 2].map(|k| c[k] - want_c[k])));
            let lap_of = |m: &Monomial| (0..3).map(|k| m.diff(k, p, 2)).sum::<f64>();
            classical = classical.max((scalar_laplacian_at(&f, &flat, p)? - lap_of(m)).abs());
            let vl = vector_laplacian_at(&u, &flat, p)?;
            let want_vl = [0, 1, 2].map(|k| lap_of(&comps[k]));
            classical = classical.max(max_abs([0, 1, 2].map(|k| vl[k] - want_vl[k])));
        }
    }
    Ok(vec![
        Measurement::new("diffops", "curl grad f (max abs)", cg, 1e-6),
        Measurement::new("diffops", "div curl u (max abs)", dc, 1e-6),
        Measurement::new("diffops", "Laplacian minus div grad (max abs)", lap, 1e-6),
        Measurement::new("diffops", "unit dimensions vs classical operators on cubic monomials (max abs)", classical, 1e-7),
    ])
}

fn exact_jet(t: &TestField, p: [f64; 3]) -> LocalJet {
    LocalJet {
        value: (t.f)(p),
        grad: (t.grad)(p),
        hess_diag: (t.hess_diag)(p),
    }
}

/// Algebraic identities between the alternative Laplacians.
pub fn operator_zoo() -> Result<Vec<Measurement>> {
    let points = sample_points(6, 0.5, 2.0);
    let (mut k1l, mut k2l, mut sq, mut k1ps, mut zmn, mut news) = (0.0f64, 0.0f64, 0.0f64, 0.0f64, 0.0f64, 0.0f64);
    let mut news_size = f64::INFINITY;
    for a in [0.4, 0.8, 1.3] {
        let iso = |kind| LaplacianSpec::isotropic(kind, a);
        let alphas = MultiIndex::relaxed([a; 3])?;
        for t in BATTERY {
            let f = t.field();
            for &p in &points {
                let jet = exact_jet(&t, p);
                let k1 = laplacian_from_jet(&iso(LaplacianKind::K1)?, p, &jet)?;
                let k2 = laplacian_from_jet(&iso(LaplacianKind::K2)?, p, &jet)?;
                let kl1 = laplacian_from_jet(&iso(LaplacianKind::Kl(1.0 - 0.5 * a))?, p, &jet)?;
                let klh = laplacian_from_jet(&iso(LaplacianKind::Kl(0.5))?, p, &jet)?;
                let ps = laplacian_from_jet(&iso(LaplacianKind::PS)?, p, &jet)?;
                k1l = k1l.max((k1 - kl1).abs());
                k2l = k2l.max((k2 - klh).abs());
                k1ps = k1ps.max((k1 - ps).abs());
                sq = sq.max((first_order_square(&alphas, &f, p)? - k2).abs());
            }
        }
    }
    for alphas in ANISOTROPIC {
        let mi = MultiIndex::new(alphas)?;
        let z = LaplacianSpec::new(LaplacianKind::ZmnApprox, mi)?;
        let k2 = LaplacianSpec::anisotropic(LaplacianKind::K2, mi)?;
        let n = LaplacianSpec::new(LaplacianKind::News, mi)?;
        let ps = LaplacianSpec::new(LaplacianKind::PS, mi)?;
        for t in BATTERY {
            let f = t.field();
            for &p in &points {
                let jet = exact_jet(&t, p);
                zmn = zmn.max((laplacian_from_jet(&z, p, &jet)? - laplacian_from_jet(&k2, p, &jet)?).abs());
                // numerical operators against the hand-derived difference term
                let diff = apply_laplacian(&n, &f, p)? - apply_laplacian(&ps, &f, p)?;
                let want = news_minus_ps(&mi, p, jet.grad, jet.hess_diag);
                news = news.max((diff - want).abs());
                news_size = news_size.min(diff.abs().max(want.abs()));
            }
        }
    }
    Ok(vec![
        Measurement::new("altops", "K1 minus K(l = 1 - alpha/2)", k1l, 1e-10),
        Measurement::new("altops", "K2 minus K(l = 1/2)", k2l, 1e-10),
        Measurement::new("altops", "K2 minus sum of squared first-order operators", sq, 1e-10),
        Measurement::new("altops", "K1 minus PS (isotropic)", k1ps, 1e-10),
        Measurement::new("altops", "ZMN minus per-axis K2", zmn, 1e-10),
        Measurement::new("altops", "NEWS - PS minus hand-derived difference", news, 1e-8),
        Measurement::at_least("altops", "smallest |NEWS - PS| on the battery", news_size, 1e-6),
    ])
}

/// Source terms of the Poisson checks.
pub const POISSON_SOURCES: [(&str, fn(f64) -> f64); 3] = [("1", |_| 1.0), ("x", |x| x), ("sin x", f64::sin)];
pub const POISSON_ALPHAS: [f64; 4] = [0.5, 0.8, 1.0, 1.3];
pub const POISSON_INTERVAL: (f64, f64) = (0.1, 2.0);
pub const POISSON_NODES: usize = 2001;

/// Analytic against numeric Poisson solutions, and the homogeneous bases.
pub fn poisson() -> Result<Vec<Measurement>> {
    let (mut diff, mut basis) = (0.0f64, 0.0f64);
    for op in [PoissonOperator::News, PoissonOperator::K2] {
        for a in POISSON_ALPHAS {
            for (_, f) in POISSON_SOURCES {
                let p = PoissonProblem::dirichlet(op, a, f, POISSON_INTERVAL, (0.0, 1.0))?;
                let analytic = poisson_solve_analytic(&p)?;
                let numeric = poisson_solve_numeric(&p, POISSON_NODES)?;
                diff = diff.max(max_difference(&analytic, &numeric, 997));
            }
            let (h1, h2) = poisson_homogeneous_basis(op, AxisDimension::new(a)?);
            for i in 0..=60 {
                let x = POISSON_INTERVAL.0 + (POISSON_INTERVAL.1 - POISSON_INTERVAL.0) * i as f64 / 60.0;
                basis = basis.max(apply_operator(op, a, &*h1, x)?.abs());
                basis = basis.max(apply_operator(op, a, &*h2, x)?.abs());
            }
        }
    }
    Ok(vec![
        Measurement::new("solvers", "analytic vs numeric Poisson (max norm)", diff, 1e-5),
        Measurement::new("solvers", "homogeneous basis operator residual", basis, 1e-8),
    ])
}

/// Roots of `cosh z cos z + 1` by plain bisection on its sign, without the
/// scaling used by the library's root finder.
pub fn bisection_roots(count: usize) -> Vec<f64> {
    let g = |z: f64| z.cosh() * z.cos() + 1.0;
    (1..=count)
        .map(|m| {
            let (mut lo, mut hi) = ((m - 1) as f64 * PI, m as f64 * PI);
            let neg_lo = g(lo) < 0.0;
            while hi - lo > 4.0 * f64::EPSILON * hi {
                let mid = 0.5 * (lo + hi);
                if (g(mid) < 0.0) == neg_lo {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            0.5 * (lo + hi)
        })
        .collect()
}

/// Cantilever roots, boundary conditions, orthogonality and the beam
/// equation residual.
pub fn cantilever() -> Result<Vec<Measurement>> {
    let z = frequency_roots(10)?;
    let residual = z.iter().map(|&z| frequency_residual(z).abs()).fold(0.0, f64::max);
    let bisect = z
        .iter()
        .zip(bisection_roots(10))
        .map(|(a, b)| rel(*a, b))
        .fold(0.0, f64::max);
    let out_of_order = z.windows(2).filter(|w| w[1] <= w[0]).count();

    let mut bc = 0.0f64;
    for alpha in [0.5, 0.8, 1.0, 1.3] {
        let cfg = BeamConfig::unit(alpha)?;
        for k in characteristic_roots(&cfg, 10, Convention::Effective)? {
            let m = ModeShape::new(&cfg, k, Convention::Effective);
            bc = m.boundary_residuals().into_iter().fold(bc, f64::max);
        }
    }

    let cfg = BeamConfig::unit(0.8)?;
    let ks = characteristic_roots(&cfg, 10, Convention::Effective)?;
    let omegas = natural_frequencies(&cfg, &ks);
    let modes: Vec<_> = ks.iter().map(|&k| ModeShape::new(&cfg, k, Convention::Effective)).collect();
    let mut orth = 0.0f64;
    for i in 0..4 {
        for j in 0..i {
            orth = orth.max(modal_inner_product(&modes[i], &modes[j]).abs());
        }
    }
    let mut eb = 0.0f64;
    for (m, (&k, &om)) in modes.iter().zip(ks.iter().zip(&omegas)) {
        let grid = ResidualGrid::for_mode(&cfg, k, om, 0.3, 12, 4);
        eb = eb.max(euler_bernoulli_residual(|x, t| m.eval(x) * (om * t).cos(), &cfg, &grid)?);
    }
    Ok(vec![
        Measurement::new("beam", "scaled frequency-equation residual", residual, 1e-12),
        Measurement::new("beam", "roots vs independent bisection (rel)", bisect, 1e-12),
        Measurement::new("beam", "roots out of order (count)", out_of_order as f64, 0.0),
        Measurement::new("beam", "mode boundary residuals (relative to max|w|)", bc, 1e-6),
        Measurement::new("beam", "modal inner products, first four modes", orth, 1e-6),
        Measurement::new("beam", "Euler-Bernoulli residual of modes at alpha 0.8", eb, 1e-5),
    ])
}

/// Energy conservation of the Timoshenko integrator and the transfer of a
/// classical run to a fractal one.
pub fn timoshenko() -> Result<Vec<Measurement>> {
    let cfg = BeamConfig::slender(0.8)?;
    let k = characteristic_roots(&cfg, 1, Convention::Effective)?[0];
    let omega = natural_frequencies(&cfg, &[k])[0];
    let mode = ModeShape::new(&cfg, k, Convention::Effective);
    let period = 2.0 * PI / omega;

    let model = TimoshenkoModel::new(&cfg, 100, period / 200.0)?;
    let mut s = model.initial_state(|x| mode.eval(x), |_| 0.0, |x| 0.3 * x, |_| 0.0);
    let e0 = s.energy.total();
    let series = model.run(&mut s, 10_000, 10)?;
    let drift = series.iter().map(|p| rel(p.energy.total(), e0)).fold(0.0, f64::max);

    let classical = cfg.classical_equivalent();
    let steps = 2000;
    let direct = TimoshenkoModel::new(&cfg, 400, period / steps as f64)?;
    let reference = TimoshenkoModel::new(&classical, 800, period / steps as f64)?;
    let mode_c = ModeShape::new(&classical, k, Convention::Effective);
    let (mut sd, mut sc) = (direct.modal_state(&mode), reference.modal_state(&mode_c));
    direct.run(&mut sd, steps, steps)?;
    reference.run(&mut sc, steps, steps)?;
    let h = reference.spacing();
    let transferred = transfer_solution(|xi, _| sc.w_at_chi(xi, h), &cfg);
    let w = sd.w();
    let scale = w.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let err = direct
        .x_nodes()
        .iter()
        .zip(&w)
        .map(|(&x, v)| (transferred(x, sd.time) - v).abs())
        .fold(0.0, f64::max)
        / scale;
    Ok(vec![
        Measurement::new("beam", "Newmark energy drift over 10^4 steps (rel)", drift, 1e-3),
        Measurement::new("beam", "transferred classical run vs direct run after one period (rel)", err, 1e-2),
    ])
}

/// Least-squares slope of `ln M` against `ln L_k` for each edge.
pub fn mass_power_law() -> Result<Vec<Measurement>> {
    let alphas = MultiIndex::new([0.7, 1.0, 1.3])?;
    let lengths: Vec<f64> = (0..9).map(|i| 0.25 * 2f64.powf(0.5 * i as f64)).collect();
    let mut worst = 0.0f64;
    for k in 0..3 {
        let pts: Vec<(f64, f64)> = lengths
            .iter()
            .map(|&l| {
                let mut edges = [1.3, 0.8, 2.1];
                edges[k] = l;
                parallelepiped_mass(&alphas, edges, 2.5).map(|m| (l.ln(), m.ln()))
            })
            .collect::<Result<_>>()?;
        let n = pts.len() as f64;
        let (mx, my) = (
            pts.iter().map(|p| p.0).sum::<f64>() / n,
            pts.iter().map(|p| p.1).sum::<f64>() / n,
        );
        let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
        let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
        worst = worst.max((sxy / sxx - alphas.alpha(k)).abs());
    }
    Ok(vec![Measurement::new("measure", "log-log mass slope minus alpha_k", worst, 1e-12)])
}

/// Every check, in a fixed order.
pub fn run_suite(options: &SuiteOptions) -> Result<SuiteReport> {
    let mut measurements = Vec::new();
    measurements.extend(volumes_and_areas()?);
    measurements.extend(spherical_reduction(options.seed, options.mc_samples)?);
    measurements.extend(angular_identities()?);
    measurements.extend(vector_identities()?);
    measurements.extend(operator_zoo()?);
    measurements.extend(poisson()?);
    measurements.extend(cantilever()?);
    measurements.extend(timoshenko()?);
    measurements.extend(mass_power_law()?);
    Ok(SuiteReport {
        options: *options,
        measurements: measurements.into_iter().map(|m| m.scaled(options.tol_scale)).collect(),
    })
}
