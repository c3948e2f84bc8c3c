//! Structured tensor grids and sampled fields.

use serde::{Deserialize, Serialize};

use super::LameFrame;
use crate::error::{Error, Result};
use crate::field::ScalarField;
use crate::quadrature::Box3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Spacing {
    UniformPhysical,
    UniformEffective,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub domain: Box3,
    pub nodes: [usize; 3],
    pub spacing: Spacing,
    pub fd_step: f64,
}

impl GridSpec {
    pub fn new(domain: Box3, nodes: [usize; 3], spacing: Spacing) -> Result<Self> {
        if let Some(k) = nodes.iter().position(|&n| n < 3) {
            return Err(Error::InvalidArgument(format!(
                "grid needs at least 3 nodes per axis, axis {} has {}",
                k + 1,
                nodes[k]
            )));
        }
        Ok(Self {
            domain,
            nodes,
            spacing,
            fd_step: super::DEFAULT_FD_STEP,
        })
    }

    /// Check the grid against a frame: singular axes need `a_k > 0`.
    pub fn validate(&self, frame: &LameFrame) -> Result<()> {
        for k in 0..3 {
            let (a, _) = self.domain.interval(k);
            if frame.alpha(k) != 1.0 && a <= 0.0 {
                return Err(Error::DomainError(format!(
                    "grid axis {} starts at {a}; alpha = {} requires a > 0",
                    k + 1,
                    frame.alpha(k)
                )));
            }
        }
        Ok(())
    }

    /// Physical node positions along one axis.
    pub fn axis_nodes(&self, axis: usize, frame: &LameFrame) -> Vec<f64> {
        let (a, b) = self.domain.interval(axis);
        let n = self.nodes[axis];
        match self.spacing {
            Spacing::UniformPhysical => linspace(a, b, n),
            Spacing::UniformEffective => {
                let map = frame.coordinate(axis);
                let mut xs: Vec<f64> = linspace(map.forward(a), map.forward(b), n)
                    .into_iter()
                    .map(|u| map.inverse(u))
                    .collect();
                // pin the endpoints against round-trip drift
                xs[0] = a;
                xs[n - 1] = b;
                xs
            }
        }
    }

    pub fn len(&self) -> usize {
        self.nodes.iter().product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    #[inline]
    pub fn index(&self, i: [usize; 3]) -> usize {
        (i[0] * self.nodes[1] + i[1]) * self.nodes[2] + i[2]
    }
}

pub(crate) fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    let h = (b - a) / (n - 1) as f64;
    (0..n)
        .map(|i| if i + 1 == n { b } else { a + h * i as f64 })
        .collect()
}

/// A scalar field sampled on a grid, stored row-major with axis 3 fastest.
#[derive(Debug, Clone, PartialEq)]
pub struct GridField {
    pub spec: GridSpec,
    pub frame: LameFrame,
    pub coords: [Vec<f64>; 3],
    pub values: Vec<f64>,
}

impl GridField {
    pub fn sample(f: &ScalarField, spec: &GridSpec, frame: &LameFrame) -> Result<Self> {
        spec.validate(frame)?;
        let coords = [0, 1, 2].map(|k| spec.axis_nodes(k, frame));
        let mut values = Vec::with_capacity(spec.len());
        for &x in &coords[0] {
            for &y in &coords[1] {
                for &z in &coords[2] {
                    values.push(f.eval([x, y, z])?);
                }
            }
        }
        Ok(Self {
            spec: *spec,
            frame: *frame,
            coords,
            values,
        })
    }

    pub fn at(&self, i: [usize; 3]) -> f64 {
        self.values[self.spec.index(i)]
    }

    pub fn point(&self, i: [usize; 3]) -> [f64; 3] {
        [self.coords[0][i[0]], self.coords[1][i[1]], self.coords[2][i[2]]]
    }

    /// `∂_{x_k,α_k}` of the samples, i.e. `d/dX_k`. Three-point formulas on
    /// the effective-coordinate node positions (uniform or not), one-sided
    /// at the ends.
    pub fn partial_alpha(&self, axis: usize) -> GridField {
        let map = self.frame.coordinate(axis);
        let u: Vec<f64> = self.coords[axis].iter().map(|&x| map.forward(x)).collect();
        let n = self.spec.nodes;
        let mut out = self.values.clone();
        let mut line = vec![0.0; n[axis]];
        let others: Vec<usize> = (0..3).filter(|&k| k != axis).collect();
        for p in 0..n[others[0]] {
            for q in 0..n[others[1]] {
                let idx = |m: usize| {
                    let mut i = [0; 3];
                    i[axis] = m;
                    i[others[0]] = p;
                    i[others[1]] = q;
                    self.spec.index(i)
                };
                for (m, slot) in line.iter_mut().enumerate() {
                    *slot = self.values[idx(m)];
                }
                for (m, d) in derivative_nonuniform(&u, &line).into_iter().enumerate() {
                    out[idx(m)] = d;
                }
            }
        }
        GridField {
            values: out,
            ..self.clone()
        }
    }

    pub fn max_abs_diff(&self, f: &ScalarField) -> Result<f64> {
        let mut worst = 0.0f64;
        for i in 0..self.spec.nodes[0] {
            for j in 0..self.spec.nodes[1] {
                for k in 0..self.spec.nodes[2] {
                    let d = (self.at([i, j, k]) - f.eval(self.point([i, j, k]))?).abs();
                    worst = worst.max(d);
                }
            }
        }
        Ok(worst)
    }
}

/// Three-point derivative of `y(u)` on arbitrary increasing nodes; exact for
/// quadratics.
pub fn derivative_nonuniform(u: &[f64], y: &[f64]) -> Vec<f64> {
    let n = u.len();
    let quad = |i0: usize, at: f64| {
        let (a, b, c) = (u[i0], u[i0 + 1], u[i0 + 2]);
        y[i0] * (2.0 * at - b - c) / ((a - b) * (a - c))
            + y[i0 + 1] * (2.0 * at - a - c) / ((b - a) * (b - c))
            + y[i0 + 2] * (2.0 * at - a - b) / ((c - a) * (c - b))
    };
    (0..n)
        .map(|i| {
            let i0 = i.saturating_sub(1).min(n - 3);
            quad(i0, u[i])
        })
        .collect()
}
