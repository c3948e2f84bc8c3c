//! Single-variable Poisson equation `L φ = f` on `[a, b]`, `a > 0`, for the
//! NEWS operator `(1/c₁²)(φ'' − ((α−1)/x) φ')` and the K₂ operator
//! `φ'' + ((α−1)/x) φ' + ((α−1)(α−3)/(4x²)) φ`.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::diffops::fd;
use crate::error::{Error, Result};
use crate::gamma::gamma;
use crate::linalg::{condition_2x2, solve_tridiagonal, LocalInterpolant};
use crate::measure::{nids_prefactor, AxisDimension, EffectiveCoordinateMap};
use crate::quadrature::gauss_legendre;

pub type RealFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// Largest acceptable condition number of the boundary system.
pub const MAX_BOUNDARY_CONDITION: f64 = 1e12;
/// Richardson error estimate above which a numeric solve is refused.
pub const GRID_ERROR_LIMIT: f64 = 1e-4;
pub const RESIDUAL_POINTS: usize = 200;
/// Nodes per local interpolation polynomial of a numeric solution.
pub const INTERPOLATION_ORDER: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PoissonOperator {
    News,
    K2,
}

impl PoissonOperator {
    pub fn name(&self) -> &'static str {
        match self {
            Self::News => "news",
            Self::K2 => "k2",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum Boundary {
    Dirichlet { left: f64, right: f64 },
    /// Coefficients of the homogeneous basis given directly.
    Free { c1: f64, c2: f64 },
}

#[derive(Clone)]
pub struct PoissonProblem {
    pub operator: PoissonOperator,
    pub alpha: AxisDimension,
    pub source: RealFn,
    pub interval: (f64, f64),
    pub boundary: Boundary,
}

impl fmt::Debug for PoissonProblem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PoissonProblem")
            .field("operator", &self.operator)
            .field("alpha", &self.alpha)
            .field("interval", &self.interval)
            .field("boundary", &self.boundary)
            .finish_non_exhaustive()
    }
}

impl PoissonProblem {
    pub fn new<F>(operator: PoissonOperator, alpha: AxisDimension, source: F, interval: (f64, f64), boundary: Boundary) -> Result<Self>
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        let (a, b) = interval;
        if !(a > 0.0 && a.is_finite()) {
            return Err(Error::DomainError(format!("left endpoint must be > 0, got {a}")));
        }
        if !(b > a && b.is_finite()) {
            return Err(Error::InvalidArgument(format!("interval [{a}, {b}] must have b > a")));
        }
        Ok(Self {
            operator,
            alpha,
            source: Arc::new(source),
            interval,
            boundary,
        })
    }

    pub fn dirichlet<F>(operator: PoissonOperator, alpha: f64, source: F, interval: (f64, f64), values: (f64, f64)) -> Result<Self>
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        let boundary = Boundary::Dirichlet {
            left: values.0,
            right: values.1,
        };
        Self::new(operator, AxisDimension::new(alpha)?, source, interval, boundary)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SolutionMethod {
    Analytic,
    Numeric,
    ClosedForm,
}

#[derive(Clone)]
pub struct PoissonSolution {
    pub phi: RealFn,
    pub constants: (f64, f64),
    pub residual_norm: f64,
    pub method: SolutionMethod,
    pub operator: PoissonOperator,
    pub alpha: AxisDimension,
    pub interval: (f64, f64),
    source: RealFn,
    /// Richardson error estimate of a numeric solve.
    pub error_estimate: Option<f64>,
}

impl fmt::Debug for PoissonSolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PoissonSolution")
            .field("constants", &self.constants)
            .field("residual_norm", &self.residual_norm)
            .field("method", &self.method)
            .finish_non_exhaustive()
    }
}

impl PoissonSolution {
    pub fn eval(&self, x: f64) -> f64 {
        (self.phi)(x)
    }

    /// Max `|Lφ − f|` over `n` evenly spaced points of the interval.
    pub fn residual_on(&self, n: usize) -> Result<f64> {
        max_residual(self.operator, self.alpha.value(), &*self.phi, &*self.source, self.interval, n)
    }

    pub fn samples(&self, n: usize) -> Vec<(f64, f64)> {
        let (a, b) = self.interval;
        (0..n)
            .map(|i| {
                let x = a + (b - a) * i as f64 / (n - 1).max(1) as f64;
                (x, self.eval(x))
            })
            .collect()
    }
}

/// Derivative step at `x`: relative to `x` so power-law solutions near the
/// left end are resolved as well as those far from the origin.
fn step_at(x: f64) -> f64 {
    (2e-2 * x).min(fd::safe_step(1e-2, x, true))
}

/// `L φ` at `x > 0` by central differences.
pub fn apply_operator<F: Fn(f64) -> f64>(op: PoissonOperator, alpha: f64, phi: F, x: f64) -> Result<f64> {
    if !(x > 0.0) {
        return Err(Error::DomainError(format!("operator needs x > 0, got {x}")));
    }
    let h = step_at(x);
    let d1 = fd::derivative_of(&phi, x, h);
    let d2 = fd::second_derivative_of(&phi, x, h);
    Ok(match op {
        PoissonOperator::News => {
            let c = nids_prefactor(alpha) * x.powf(alpha - 1.0);
            (d2 - (alpha - 1.0) / x * d1) / (c * c)
        }
        PoissonOperator::K2 => d2 + (alpha - 1.0) / x * d1 + (alpha - 1.0) * (alpha - 3.0) / (4.0 * x * x) * phi(x),
    })
}

pub fn max_residual(op: PoissonOperator, alpha: f64, phi: &dyn Fn(f64) -> f64, f: &dyn Fn(f64) -> f64, interval: (f64, f64), n: usize) -> Result<f64> {
    let (a, b) = interval;
    let mut worst = 0.0f64;
    for i in 0..n {
        let x = a + (b - a) * i as f64 / (n - 1).max(1) as f64;
        worst = worst.max((apply_operator(op, alpha, phi, x)? - f(x)).abs());
    }
    Ok(worst)
}

/// The two homogeneous solutions: NEWS `(1, x^α)`, K₂ `(x^{(3−α)/2}, x^{(1−α)/2})`.
pub fn poisson_homogeneous_basis(op: PoissonOperator, alpha: AxisDimension) -> (RealFn, RealFn) {
    let a = alpha.value();
    match op {
        PoissonOperator::News => (Arc::new(|_| 1.0), Arc::new(move |x: f64| x.powf(a))),
        PoissonOperator::K2 => (
            Arc::new(move |x: f64| x.powf((3.0 - a) / 2.0)),
            Arc::new(move |x: f64| x.powf((1.0 - a) / 2.0)),
        ),
    }
}

/// Standard form `φ'' + p φ' + q φ = g`: returns the factor turning `f`
/// into `g`, and the Wronskian `h₁h₂' − h₁'h₂` of the basis.
fn standard_form(op: PoissonOperator, alpha: f64) -> (impl Fn(f64) -> f64, impl Fn(f64) -> f64) {
    let c = nids_prefactor(alpha);
    let scale = move |x: f64| match op {
        PoissonOperator::News => (c * x.powf(alpha - 1.0)).powi(2),
        PoissonOperator::K2 => 1.0,
    };
    let wronskian = move |x: f64| match op {
        PoissonOperator::News => alpha * x.powf(alpha - 1.0),
        PoissonOperator::K2 => -x.powf(1.0 - alpha),
    };
    (scale, wronskian)
}

/// Gauss–Legendre rule on `[a, x]` with a fixed number of panels, so the
/// result is a smooth function of `x`.
struct MovingRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
    panels: usize,
}

impl MovingRule {
    fn new(nodes: usize, panels: usize) -> Self {
        let (nodes, weights) = gauss_legendre(nodes);
        Self { nodes, weights, panels }
    }

    fn integrate<F: Fn(f64) -> f64>(&self, f: F, a: f64, b: f64) -> f64 {
        let w = (b - a) / self.panels as f64;
        let mut sum = 0.0;
        for p in 0..self.panels {
            let lo = a + w * p as f64;
            let (mid, half) = (lo + 0.5 * w, 0.5 * w);
            for (t, wt) in self.nodes.iter().zip(&self.weights) {
                sum += wt * f(mid + half * t);
            }
        }
        sum * 0.5 * w
    }
}

/// Particular solution by variation of parameters, integrals anchored at `a`:
/// `φ_p = −h₁∫ h₂ g/W + h₂∫ h₁ g/W`.
fn particular(op: PoissonOperator, alpha: AxisDimension, f: RealFn, a: f64) -> RealFn {
    let (h1, h2) = poisson_homogeneous_basis(op, alpha);
    let rule = MovingRule::new(20, 8);
    Arc::new(move |x: f64| {
        let (scale, wr) = standard_form(op, alpha.value());
        let i1 = rule.integrate(|t| h2(t) * scale(t) * f(t) / wr(t), a, x);
        let i2 = rule.integrate(|t| h1(t) * scale(t) * f(t) / wr(t), a, x);
        -h1(x) * i1 + h2(x) * i2
    })
}

fn fit_constants(h: (&RealFn, &RealFn), p: &RealFn, interval: (f64, f64), boundary: Boundary) -> Result<(f64, f64)> {
    match boundary {
        Boundary::Free { c1, c2 } => Ok((c1, c2)),
        Boundary::Dirichlet { left, right } => {
            let (a, b) = interval;
            let m = [[h.0(a), h.1(a)], [h.0(b), h.1(b)]];
            let cond = condition_2x2(m);
            if !(cond <= MAX_BOUNDARY_CONDITION) {
                return Err(Error::SingularBoundarySystem { condition: cond });
            }
            let (ra, rb) = (left - p(a), right - p(b));
            let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
            Ok(((ra * m[1][1] - m[0][1] * rb) / det, (m[0][0] * rb - m[1][0] * ra) / det))
        }
    }
}

fn assemble(problem: &PoissonProblem, p: RealFn, method: SolutionMethod) -> Result<PoissonSolution> {
    let (h1, h2) = poisson_homogeneous_basis(problem.operator, problem.alpha);
    let (c1, c2) = fit_constants((&h1, &h2), &p, problem.interval, problem.boundary)?;
    let phi: RealFn = Arc::new(move |x| c1 * h1(x) + c2 * h2(x) + p(x));
    finish(problem, phi, (c1, c2), method, None)
}

fn finish(problem: &PoissonProblem, phi: RealFn, constants: (f64, f64), method: SolutionMethod, error_estimate: Option<f64>) -> Result<PoissonSolution> {
    let residual_norm = max_residual(
        problem.operator,
        problem.alpha.value(),
        &*phi,
        &*problem.source,
        problem.interval,
        RESIDUAL_POINTS,
    )?;
    Ok(PoissonSolution {
        phi,
        constants,
        residual_norm,
        method,
        operator: problem.operator,
        alpha: problem.alpha,
        interval: problem.interval,
        source: problem.source.clone(),
        error_estimate,
    })
}

/// General solution `C₁h₁ + C₂h₂ + φ_p` with the constants fitted to the
/// boundary conditions.
pub fn poisson_solve_analytic(problem: &PoissonProblem) -> Result<PoissonSolution> {
    let p = particular(problem.operator, problem.alpha, problem.source.clone(), problem.interval.0);
    assemble(problem, p, SolutionMethod::Analytic)
}

/// NEWS particular solution in the closed form
/// `−(π^α/(αΓ(α/2)²))(∫f x^{2α−1} − x^α ∫f x^{α−1})`, integrals from `a`,
/// completed with the same boundary fit.
pub fn poisson_news_closed_form(problem: &PoissonProblem) -> Result<PoissonSolution> {
    if problem.operator != PoissonOperator::News {
        return Err(Error::InvalidArgument("the closed form applies to the NEWS operator".into()));
    }
    let a = problem.alpha.value();
    let lower = problem.interval.0;
    let k = std::f64::consts::PI.powf(a) / (a * gamma(a / 2.0).powi(2));
    let f = problem.source.clone();
    let rule = MovingRule::new(20, 8);
    let p: RealFn = Arc::new(move |x: f64| {
        let i1 = rule.integrate(|t| f(t) * t.powf(2.0 * a - 1.0), lower, x);
        let i2 = rule.integrate(|t| f(t) * t.powf(a - 1.0), lower, x);
        -k * (i1 - x.powf(a) * i2)
    });
    assemble(problem, p, SolutionMethod::ClosedForm)
}

/// Second-order finite-difference solution on `nodes` points. NEWS is
/// solved as `d²φ/du² = f(x(u))` on a grid uniform in `u = X(x)`; K₂ on a
/// grid uniform in `x`. Returns the physical node positions and values.
pub fn solve_fd(problem: &PoissonProblem, nodes: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    let Boundary::Dirichlet { left, right } = problem.boundary else {
        return Err(Error::InvalidArgument("numeric solve needs Dirichlet conditions".into()));
    };
    if nodes < 3 {
        return Err(Error::InvalidArgument(format!("need at least 3 nodes, got {nodes}")));
    }
    let (a, b) = problem.interval;
    let alpha = problem.alpha.value();
    let f = &problem.source;
    let map = EffectiveCoordinateMap::x(problem.alpha);
    let (s0, s1) = match problem.operator {
        PoissonOperator::News => (map.forward(a), map.forward(b)),
        PoissonOperator::K2 => (a, b),
    };
    let h = (s1 - s0) / (nodes - 1) as f64;
    let s: Vec<f64> = (0..nodes)
        .map(|i| if i + 1 == nodes { s1 } else { s0 + h * i as f64 })
        .collect();
    let xs: Vec<f64> = match problem.operator {
        PoissonOperator::News => {
            let mut xs: Vec<f64> = s.iter().map(|&u| map.inverse(u)).collect();
            xs[0] = a;
            xs[nodes - 1] = b;
            xs
        }
        PoissonOperator::K2 => s.clone(),
    };
    let m = nodes - 2;
    let (mut lo, mut di, mut up, mut rhs) = (vec![0.0; m], vec![0.0; m], vec![0.0; m], vec![0.0; m]);
    let h2 = h * h;
    for j in 0..m {
        let x = xs[j + 1];
        let (cl, cd, cu) = match problem.operator {
            PoissonOperator::News => (1.0 / h2, -2.0 / h2, 1.0 / h2),
            PoissonOperator::K2 => {
                let p = (alpha - 1.0) / x;
                let q = (alpha - 1.0) * (alpha - 3.0) / (4.0 * x * x);
                (1.0 / h2 - p / (2.0 * h), -2.0 / h2 + q, 1.0 / h2 + p / (2.0 * h))
            }
        };
        lo[j] = cl;
        di[j] = cd;
        up[j] = cu;
        rhs[j] = f(x);
        if j == 0 {
            rhs[j] -= cl * left;
        }
        if j == m - 1 {
            rhs[j] -= cu * right;
        }
    }
    let inner = solve_tridiagonal(&lo, &di, &up, &rhs)?;
    let mut values = Vec::with_capacity(nodes);
    values.push(left);
    values.extend(inner);
    values.push(right);
    Ok((xs, values))
}

/// Finite-difference solution with one Richardson step (`h` and `h/2`),
/// interpolated by local quintics in the grid coordinate.
pub fn poisson_solve_numeric(problem: &PoissonProblem, nodes: usize) -> Result<PoissonSolution> {
    let (xs, coarse) = solve_fd(problem, nodes)?;
    let (_, fine) = solve_fd(problem, 2 * nodes - 1)?;
    let mut estimate = 0.0f64;
    let extrapolated: Vec<f64> = coarse
        .iter()
        .enumerate()
        .map(|(i, &c)| {
            let f = fine[2 * i];
            estimate = estimate.max((f - c).abs() / 3.0);
            f + (f - c) / 3.0
        })
        .collect();
    if estimate > GRID_ERROR_LIMIT {
        return Err(Error::GridTooCoarse {
            estimate,
            limit: GRID_ERROR_LIMIT,
        });
    }
    let map = EffectiveCoordinateMap::x(problem.alpha);
    let op = problem.operator;
    let knots: Vec<f64> = match op {
        PoissonOperator::News => xs.iter().map(|&x| map.forward(x)).collect(),
        PoissonOperator::K2 => xs,
    };
    let spline = LocalInterpolant::new(knots, extrapolated, INTERPOLATION_ORDER)?;
    let phi: RealFn = Arc::new(move |x| match op {
        PoissonOperator::News => spline.eval(map.forward(x)),
        PoissonOperator::K2 => spline.eval(x),
    });
    finish(problem, phi, (f64::NAN, f64::NAN), SolutionMethod::Numeric, Some(estimate))
}

/// Max `|φ₁ − φ₂|` over `n` evenly spaced points.
pub fn max_difference(s1: &PoissonSolution, s2: &PoissonSolution, n: usize) -> f64 {
    s1.samples(n)
        .iter()
        .map(|&(x, v)| (v - s2.eval(x)).abs())
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn alpha(a: f64) -> AxisDimension {
        AxisDimension::new(a).unwrap()
    }

    #[test]
    fn homogeneous_basis_examples() {
        let (h1, h2) = poisson_homogeneous_basis(PoissonOperator::News, alpha(1.0));
        assert_eq!((h1(0.7), h2(0.7)), (1.0, 0.7));
        let (h1, h2) = poisson_homogeneous_basis(PoissonOperator::K2, alpha(1.0));
        assert_eq!((h1(0.7), h2(0.7)), (0.7, 1.0));
        for op in [PoissonOperator::News, PoissonOperator::K2] {
            for a in [0.5, 0.8, 1.3] {
                let (h1, h2) = poisson_homogeneous_basis(op, alpha(a));
                for i in 0..=40 {
                    let x = 0.1 + 1.9 * i as f64 / 40.0;
                    assert!(apply_operator(op, a, &*h1, x).unwrap().abs() < 1e-8, "{op:?} {a} h1 {x}");
                    assert!(apply_operator(op, a, &*h2, x).unwrap().abs() < 1e-8, "{op:?} {a} h2 {x}");
                }
            }
        }
    }

    #[test]
    fn classical_case_is_a_parabola() {
        let p = PoissonProblem::dirichlet(PoissonOperator::News, 1.0, |_| 1.0, (0.5, 1.5), (0.0, 0.0)).unwrap();
        let s = poisson_solve_analytic(&p).unwrap();
        assert!(s.residual_norm <= 1e-10, "{}", s.residual_norm);
        for x in [0.5, 0.8, 1.2, 1.5] {
            assert!((s.eval(x) - 0.5 * (x - 0.5) * (x - 1.5)).abs() < 1e-13);
        }
    }

    #[test]
    fn analytic_residuals_are_small() {
        for (op, f) in [
            (PoissonOperator::News, Arc::new(|_: f64| 1.0) as RealFn),
            (PoissonOperator::K2, Arc::new(|x: f64| x) as RealFn),
        ] {
            let f2 = f.clone();
            let p = PoissonProblem::dirichlet(op, 0.8, move |x| f2(x), (0.1, 2.0), (0.0, 1.0)).unwrap();
            let s = poisson_solve_analytic(&p).unwrap();
            assert!(s.residual_norm <= 1e-6, "{op:?} {}", s.residual_norm);
            assert!((s.eval(0.1)).abs() < 1e-12 && (s.eval(2.0) - 1.0).abs() < 1e-12);
            assert!(s.residual_on(500).unwrap() <= 2.0 * s.residual_norm.max(1e-300));
        }
    }

    #[test]
    fn news_closed_form_solves() {
        for a in [0.5, 0.8, 1.3] {
            let p = PoissonProblem::dirichlet(PoissonOperator::News, a, |x| x.sin(), (0.1, 2.0), (0.3, -0.2)).unwrap();
            let s = poisson_news_closed_form(&p).unwrap();
            assert!(s.residual_norm <= 1e-6, "{a}: {}", s.residual_norm);
            let t = poisson_solve_analytic(&p).unwrap();
            assert!(max_difference(&s, &t, 101) < 1e-10);
        }
    }

    #[test]
    fn k2_swapped_integrand_exponent_fails() {
        let a = 0.5;
        let rule = MovingRule::new(20, 8);
        let f = |x: f64| x.cos();
        let build = |e1: f64| {
            let rule = &rule;
            move |x: f64| {
                let i1 = rule.integrate(|t| f(t) * t.powf(e1), 0.1, x);
                let i2 = rule.integrate(|t| f(t) * t.powf((1.0 + a) / 2.0), 0.1, x);
                x.powf((3.0 - a) / 2.0) * i1 - x.powf((1.0 - a) / 2.0) * i2
            }
        };
        let swapped = build((1.0 - a) / 2.0);
        let derived = build((a - 1.0) / 2.0);
        let r_swapped = max_residual(PoissonOperator::K2, a, &swapped, &f, (0.1, 2.0), 50).unwrap();
        let r_derived = max_residual(PoissonOperator::K2, a, &derived, &f, (0.1, 2.0), 50).unwrap();
        assert!(r_derived < 1e-7, "{r_derived}");
        assert!(r_swapped > 1e-2, "{r_swapped}");
    }

    #[test]
    fn numeric_matches_analytic() {
        let p = PoissonProblem::dirichlet(PoissonOperator::News, 0.8, |_| 1.0, (0.1, 2.0), (0.0, 1.0)).unwrap();
        let n = poisson_solve_numeric(&p, 2001).unwrap();
        let s = poisson_solve_analytic(&p).unwrap();
        assert!(max_difference(&n, &s, 777) < 1e-5);
    }

    #[test]
    fn numeric_is_exact_on_linear() {
        let p = PoissonProblem::dirichlet(PoissonOperator::News, 1.0, |_| 0.0, (0.2, 1.2), (0.0, 1.0)).unwrap();
        let (xs, v) = solve_fd(&p, 11).unwrap();
        for (x, y) in xs.iter().zip(v) {
            assert!((y - (x - 0.2)).abs() < 1e-14);
        }
    }

    #[test]
    fn second_order_convergence() {
        for op in [PoissonOperator::News, PoissonOperator::K2] {
            let p = PoissonProblem::dirichlet(op, 0.8, |x| x.sin(), (0.5, 2.0), (0.0, 1.0)).unwrap();
            let exact = poisson_solve_analytic(&p).unwrap();
            let err = |n: usize| {
                let (xs, v) = solve_fd(&p, n).unwrap();
                xs.iter().zip(v).map(|(&x, y)| (y - exact.eval(x)).abs()).fold(0.0, f64::max)
            };
            let ratio = err(41) / err(81);
            assert!((3.6..4.4).contains(&ratio), "{op:?}: {ratio}");
        }
    }

    #[test]
    fn errors() {
        assert!(matches!(
            PoissonProblem::dirichlet(PoissonOperator::News, 0.8, |_| 1.0, (0.0, 1.0), (0.0, 0.0)),
            Err(Error::DomainError(_))
        ));
        let p = PoissonProblem::dirichlet(PoissonOperator::K2, 0.5, |x| (40.0 * x).sin() * 1e3, (0.1, 2.0), (0.0, 0.0)).unwrap();
        assert!(matches!(poisson_solve_numeric(&p, 11), Err(Error::GridTooCoarse { .. })));
        let mut q = PoissonProblem::dirichlet(PoissonOperator::News, 0.8, |_| 1.0, (0.1, 2.0), (0.0, 0.0)).unwrap();
        q.interval = (0.5, 0.5 + 1e-14);
        assert!(matches!(poisson_solve_analytic(&q), Err(Error::SingularBoundarySystem { .. })));
    }

    #[test]
    fn free_constants_are_kept() {
        let p = PoissonProblem::new(
            PoissonOperator::K2,
            alpha(0.8),
            |_| 0.0,
            (0.1, 2.0),
            Boundary::Free { c1: 2.0, c2: -1.0 },
        )
        .unwrap();
        let s = poisson_solve_analytic(&p).unwrap();
        assert_eq!(s.constants, (2.0, -1.0));
        assert!((s.eval(1.0) - 1.0).abs() < 1e-14);
    }
}
