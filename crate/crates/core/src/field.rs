//! Scalar and vector fields over `ℝ³` as opaque callables.

use std::fmt;
use std::sync::Arc;

use crate::error::Result;

type Eval = Arc<dyn Fn([f64; 3]) -> Result<f64> + Send + Sync>;

/// A scalar field. Evaluation may fail, e.g. when a derived field is asked
/// for a value on a singular coordinate plane.
#[derive(Clone)]
pub struct ScalarField {
    eval: Eval,
}

impl ScalarField {
    pub fn new<F>(f: F) -> Self
    where
        F: Fn([f64; 3]) -> f64 + Send + Sync + 'static,
    {
        Self {
            eval: Arc::new(move |p| Ok(f(p))),
        }
    }

    pub fn fallible<F>(f: F) -> Self
    where
        F: Fn([f64; 3]) -> Result<f64> + Send + Sync + 'static,
    {
        Self { eval: Arc::new(f) }
    }

    pub fn constant(c: f64) -> Self {
        Self::new(move |_| c)
    }

    /// A field depending on one coordinate only.
    pub fn of_axis<F>(axis: usize, f: F) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        Self::new(move |p| f(p[axis]))
    }

    #[inline]
    pub fn eval(&self, p: [f64; 3]) -> Result<f64> {
        (self.eval)(p)
    }

    /// Restrict to a line through `p` along `axis`.
    pub(crate) fn along(&self, axis: usize, p: [f64; 3]) -> impl Fn(f64) -> Result<f64> + '_ {
        move |t| {
            let mut q = p;
            q[axis] = t;
            self.eval(q)
        }
    }
}

impl fmt::Debug for ScalarField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("ScalarField(..)")
    }
}

/// A vector field `u = u_k e_k` in the orthonormal frame.
#[derive(Clone, Debug)]
pub struct VectorField {
    pub components: [ScalarField; 3],
}

impl VectorField {
    pub fn new(components: [ScalarField; 3]) -> Self {
        Self { components }
    }

    pub fn from_fns<F1, F2, F3>(u1: F1, u2: F2, u3: F3) -> Self
    where
        F1: Fn([f64; 3]) -> f64 + Send + Sync + 'static,
        F2: Fn([f64; 3]) -> f64 + Send + Sync + 'static,
        F3: Fn([f64; 3]) -> f64 + Send + Sync + 'static,
    {
        Self::new([ScalarField::new(u1), ScalarField::new(u2), ScalarField::new(u3)])
    }

    pub fn eval(&self, p: [f64; 3]) -> Result<[f64; 3]> {
        Ok([
            self.components[0].eval(p)?,
            self.components[1].eval(p)?,
            self.components[2].eval(p)?,
        ])
    }

    pub fn component(&self, k: usize) -> &ScalarField {
        &self.components[k]
    }
}
