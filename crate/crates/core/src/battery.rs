//! Named smooth test fields on the positive octant with closed-form
//! derivatives, shared by the identity suites and the CLI.

use crate::field::ScalarField;

type Fn3 = fn([f64; 3]) -> f64;
type Grad = fn([f64; 3]) -> [f64; 3];

/// A field with its gradient and the diagonal of its Hessian.
#[derive(Clone, Copy)]
pub struct TestField {
    pub name: &'static str,
    pub f: Fn3,
    pub grad: Grad,
    pub hess_diag: Grad,
}

impl TestField {
    pub fn field(&self) -> ScalarField {
        ScalarField::new(self.f)
    }

    pub fn by_name(name: &str) -> Option<TestField> {
        BATTERY.iter().copied().find(|t| t.name == name)
    }
}

impl std::fmt::Debug for TestField {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "TestField({})", self.name)
    }
}

pub const BATTERY: [TestField; 5] = [
    TestField {
        name: "power-mix",
        f: |p| p[0].powf(1.3) + p[1] * p[2],
        grad: |p| [1.3 * p[0].powf(0.3), p[2], p[1]],
        hess_diag: |p| [0.39 * p[0].powf(-0.7), 0.0, 0.0],
    },
    TestField {
        name: "exp-sin",
        f: |p| (-p[0]).exp() * p[1].sin() + p[2] * p[2],
        grad: |p| [-(-p[0]).exp() * p[1].sin(), (-p[0]).exp() * p[1].cos(), 2.0 * p[2]],
        hess_diag: |p| [(-p[0]).exp() * p[1].sin(), -(-p[0]).exp() * p[1].sin(), 2.0],
    },
    TestField {
        name: "gaussian",
        f: |p| (-(p[0] * p[0] + p[1] * p[1] + p[2] * p[2]) / 4.0).exp(),
        grad: |p| {
            let g = (-(p[0] * p[0] + p[1] * p[1] + p[2] * p[2]) / 4.0).exp();
            [-0.5 * p[0] * g, -0.5 * p[1] * g, -0.5 * p[2] * g]
        },
        hess_diag: |p| {
            let g = (-(p[0] * p[0] + p[1] * p[1] + p[2] * p[2]) / 4.0).exp();
            [0, 1, 2].map(|k| (0.25 * p[k] * p[k] - 0.5) * g)
        },
    },
    TestField {
        name: "log-power",
        f: |p| (1.0 + p[0] * p[1]).ln() + p[2].powf(2.5),
        grad: |p| {
            let d = 1.0 + p[0] * p[1];
            [p[1] / d, p[0] / d, 2.5 * p[2].powf(1.5)]
        },
        hess_diag: |p| {
            let d = 1.0 + p[0] * p[1];
            [-p[1] * p[1] / (d * d), -p[0] * p[0] / (d * d), 3.75 * p[2].sqrt()]
        },
    },
    TestField {
        name: "cos-product",
        f: |p| p[0].cos() * (0.5 * p[1]).cos() * p[2],
        grad: |p| {
            let (c0, c1) = (p[0].cos(), (0.5 * p[1]).cos());
            [-p[0].sin() * c1 * p[2], -0.5 * c0 * (0.5 * p[1]).sin() * p[2], c0 * c1]
        },
        hess_diag: |p| {
            let (c0, c1) = (p[0].cos(), (0.5 * p[1]).cos());
            [-c0 * c1 * p[2], -0.25 * c0 * c1 * p[2], 0.0]
        },
    },
];

/// Deterministic scatter of `n` points in `[lo, hi]³` (additive recurrence
/// on the plastic number, so the set is reproducible without an RNG).
pub fn sample_points(n: usize, lo: f64, hi: f64) -> Vec<[f64; 3]> {
    let g = 1.324_717_957_244_746_f64;
    let a = [1.0 / g, 1.0 / (g * g), 1.0 / (g * g * g)];
    (1..=n)
        .map(|i| [0, 1, 2].map(|k| lo + (hi - lo) * (0.5 + a[k] * i as f64).fract()))
        .collect()
}
