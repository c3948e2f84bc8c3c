//! Small direct solvers and interpolants: tridiagonal elimination, banded
//! Cholesky, cubic splines and local Lagrange interpolation.

use crate::error::{Error, Result};

/// Solve a tridiagonal system by Thomas elimination. `lower[i]` couples
/// row `i` to `i−1` (so `lower[0]` is unused), `upper[i]` row `i` to `i+1`.
pub fn solve_tridiagonal(lower: &[f64], diag: &[f64], upper: &[f64], rhs: &[f64]) -> Result<Vec<f64>> {
    let n = diag.len();
    if lower.len() != n || upper.len() != n || rhs.len() != n {
        return Err(Error::InvalidArgument("tridiagonal bands must have equal length".into()));
    }
    let mut c = vec![0.0; n];
    let mut d = vec![0.0; n];
    let mut denom = diag[0];
    for i in 0..n {
        if i > 0 {
            denom = diag[i] - lower[i] * c[i - 1];
        }
        if denom == 0.0 || !denom.is_finite() {
            return Err(Error::InvalidArgument(format!("tridiagonal pivot {i} vanished")));
        }
        c[i] = upper[i] / denom;
        d[i] = (rhs[i] - if i > 0 { lower[i] * d[i - 1] } else { 0.0 }) / denom;
    }
    for i in (0..n.saturating_sub(1)).rev() {
        d[i] -= c[i] * d[i + 1];
    }
    Ok(d)
}

/// Symmetric positive definite band matrix in lower band storage:
/// `band[i][j]` holds `A[i][i−j]` for `j ≤ bandwidth`.
#[derive(Debug, Clone, PartialEq)]
pub struct BandMatrix {
    n: usize,
    bw: usize,
    band: Vec<f64>,
}

impl BandMatrix {
    pub fn zeros(n: usize, bandwidth: usize) -> Self {
        Self {
            n,
            bw: bandwidth,
            band: vec![0.0; n * (bandwidth + 1)],
        }
    }

    pub fn size(&self) -> usize {
        self.n
    }

    pub fn bandwidth(&self) -> usize {
        self.bw
    }

    #[inline]
    fn slot(&self, i: usize, j: usize) -> Option<usize> {
        let (r, c) = if i >= j { (i, j) } else { (j, i) };
        let off = r - c;
        (off <= self.bw).then(|| r * (self.bw + 1) + off)
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.slot(i, j).map_or(0.0, |s| self.band[s])
    }

    /// Add `v` to `A[i][j]` (and by symmetry `A[j][i]`).
    pub fn add(&mut self, i: usize, j: usize, v: f64) {
        let s = self.slot(i, j).expect("entry outside band");
        self.band[s] += v;
    }

    pub fn mul_vec(&self, x: &[f64]) -> Vec<f64> {
        let mut y = vec![0.0; self.n];
        for i in 0..self.n {
            let lo = i.saturating_sub(self.bw);
            let hi = (i + self.bw).min(self.n - 1);
            y[i] = (lo..=hi).map(|j| self.get(i, j) * x[j]).sum();
        }
        y
    }

    /// `self + s·other` for matrices of equal shape.
    pub fn add_scaled(&self, s: f64, other: &BandMatrix) -> BandMatrix {
        assert_eq!((self.n, self.bw), (other.n, other.bw));
        BandMatrix {
            n: self.n,
            bw: self.bw,
            band: self.band.iter().zip(&other.band).map(|(a, b)| a + s * b).collect(),
        }
    }

    /// Cholesky factor `L` with `A = L Lᵀ`, stored in the same layout.
    pub fn cholesky(&self) -> Result<BandCholesky> {
        let (n, bw) = (self.n, self.bw);
        let mut l = self.clone();
        for i in 0..n {
            let lo = i.saturating_sub(bw);
            for j in lo..=i {
                let mut s = l.get(i, j);
                for k in i.saturating_sub(bw).max(j.saturating_sub(bw))..j {
                    s -= l.get(i, k) * l.get(j, k);
                }
                let slot = l.slot(i, j).unwrap();
                if i == j {
                    if s <= 0.0 {
                        return Err(Error::InvalidArgument(format!("matrix not positive definite at row {i}")));
                    }
                    l.band[slot] = s.sqrt();
                } else {
                    l.band[slot] = s / l.get(j, j);
                }
            }
        }
        Ok(BandCholesky { l })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BandCholesky {
    l: BandMatrix,
}

impl BandCholesky {
    pub fn solve(&self, b: &[f64]) -> Vec<f64> {
        let (n, bw) = (self.l.n, self.l.bw);
        let mut y = b.to_vec();
        for i in 0..n {
            let mut s = y[i];
            for k in i.saturating_sub(bw)..i {
                s -= self.l.get(i, k) * y[k];
            }
            y[i] = s / self.l.get(i, i);
        }
        for i in (0..n).rev() {
            let mut s = y[i];
            for k in i + 1..=(i + bw).min(n - 1) {
                s -= self.l.get(k, i) * y[k];
            }
            y[i] = s / self.l.get(i, i);
        }
        y
    }
}

/// Cubic spline through `(x_i, y_i)` with increasing `x`; natural unless
/// end curvatures are given.
#[derive(Debug, Clone, PartialEq)]
pub struct CubicSpline {
    x: Vec<f64>,
    y: Vec<f64>,
    m: Vec<f64>,
}

impl CubicSpline {
    pub fn new(x: Vec<f64>, y: Vec<f64>) -> Result<Self> {
        Self::with_end_curvature(x, y, 0.0, 0.0)
    }

    /// Spline with prescribed second derivatives at both ends.
    pub fn with_end_curvature(x: Vec<f64>, y: Vec<f64>, left: f64, right: f64) -> Result<Self> {
        let n = x.len();
        if n < 3 || y.len() != n {
            return Err(Error::InvalidArgument("spline needs at least 3 matching points".into()));
        }
        if x.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::InvalidArgument("spline abscissae must increase".into()));
        }
        let mut lower = vec![0.0; n];
        let mut diag = vec![1.0; n];
        let mut upper = vec![0.0; n];
        let mut rhs = vec![0.0; n];
        rhs[0] = left;
        rhs[n - 1] = right;
        for i in 1..n - 1 {
            let (h0, h1) = (x[i] - x[i - 1], x[i + 1] - x[i]);
            lower[i] = h0;
            diag[i] = 2.0 * (h0 + h1);
            upper[i] = h1;
            rhs[i] = 6.0 * ((y[i + 1] - y[i]) / h1 - (y[i] - y[i - 1]) / h0);
        }
        let m = solve_tridiagonal(&lower, &diag, &upper, &rhs)?;
        Ok(Self { x, y, m })
    }

    pub fn eval(&self, t: f64) -> f64 {
        let n = self.x.len();
        let i = match self.x.partition_point(|&v| v <= t) {
            0 => 0,
            p if p >= n => n - 2,
            p => p - 1,
        };
        let h = self.x[i + 1] - self.x[i];
        let a = (self.x[i + 1] - t) / h;
        let b = (t - self.x[i]) / h;
        a * self.y[i]
            + b * self.y[i + 1]
            + ((a * a * a - a) * self.m[i] + (b * b * b - b) * self.m[i + 1]) * h * h / 6.0
    }
}

/// Piecewise Lagrange interpolation through the `order` nodes nearest to
/// the evaluation point (centred where possible).
#[derive(Debug, Clone, PartialEq)]
pub struct LocalInterpolant {
    x: Vec<f64>,
    y: Vec<f64>,
    order: usize,
}

impl LocalInterpolant {
    pub fn new(x: Vec<f64>, y: Vec<f64>, order: usize) -> Result<Self> {
        if order < 2 || x.len() < order || y.len() != x.len() {
            return Err(Error::InvalidArgument(format!(
                "interpolant of order {order} needs at least {order} matching points"
            )));
        }
        if x.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::InvalidArgument("interpolation abscissae must increase".into()));
        }
        Ok(Self { x, y, order })
    }

    pub fn eval(&self, t: f64) -> f64 {
        let n = self.x.len();
        let cell = self.x.partition_point(|&v| v <= t).clamp(1, n - 1) - 1;
        let start = (cell + 1).saturating_sub(self.order / 2).min(n - self.order);
        let xs = &self.x[start..start + self.order];
        let ys = &self.y[start..start + self.order];
        let mut sum = 0.0;
        for (i, (&xi, &yi)) in xs.iter().zip(ys).enumerate() {
            let mut w = 1.0;
            for (j, &xj) in xs.iter().enumerate() {
                if j != i {
                    w *= (t - xj) / (xi - xj);
                }
            }
            sum += w * yi;
        }
        sum
    }
}

/// Condition number of a 2×2 matrix in the 2-norm.
pub fn condition_2x2(m: [[f64; 2]; 2]) -> f64 {
    let [[a, b], [c, d]] = m;
    let fro2 = a * a + b * b + c * c + d * d;
    let det = (a * d - b * c).abs();
    if det == 0.0 {
        return f64::INFINITY;
    }
    // σ₁² + σ₂² = ‖M‖_F², σ₁σ₂ = |det|
    let disc = (fro2 * fro2 - 4.0 * det * det).max(0.0).sqrt();
    let s1 = ((fro2 + disc) / 2.0).sqrt();
    let s2 = det / s1;
    s1 / s2
}
