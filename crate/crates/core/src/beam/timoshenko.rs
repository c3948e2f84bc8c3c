//! Timoshenko fractal beam on a grid uniform in the effective coordinate.
//!
//! The semi-discrete system comes from the discrete Lagrangian: on each cell
//! of width `h` in `χ` the shear strain is `(w_{i+1} − w_i)/h − (φ_i + φ_{i+1})/2`
//! and the curvature `(φ_{i+1} − φ_i)/h`, both sampled at the cell midpoint.
//! Node 0 is clamped. The free end needs no ghost node: the vanishing
//! moment and shear force are the natural conditions of the variational form.

use serde::{Deserialize, Serialize};

use super::{BeamConfig, ModeShape};
use crate::error::{Error, Result};
use crate::linalg::{BandCholesky, BandMatrix};

/// Newmark parameters (average acceleration).
pub const NEWMARK_BETA: f64 = 0.25;
pub const NEWMARK_GAMMA: f64 = 0.5;

/// Relative energy growth tolerated over one check window.
pub const ENERGY_GROWTH_LIMIT: f64 = 1e-3;
pub const ENERGY_CHECK_WINDOW: usize = 1000;

/// `(kinetic, bending, shear)`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct EnergyLedger {
    pub kinetic: f64,
    pub bending: f64,
    pub shear: f64,
}

impl EnergyLedger {
    pub fn total(&self) -> f64 {
        self.kinetic + self.bending + self.shear
    }
}

/// Discretized beam: lumped mass, banded stiffness and the factored Newmark
/// matrix for a fixed time step.
#[derive(Debug, Clone)]
pub struct TimoshenkoModel {
    pub config: BeamConfig,
    pub elements: usize,
    pub dt: f64,
    h: f64,
    mass: Vec<f64>,
    stiffness: BandMatrix,
    newmark: BandCholesky,
}

/// Interleaved unknowns `[w₁, φ₁, w₂, φ₂, …]`; node 0 is clamped.
#[inline]
fn w_index(node: usize) -> usize {
    2 * (node - 1)
}

#[inline]
fn phi_index(node: usize) -> usize {
    2 * (node - 1) + 1
}

impl TimoshenkoModel {
    pub fn new(config: &BeamConfig, elements: usize, dt: f64) -> Result<Self> {
        config.validate()?;
        if elements < 2 {
            return Err(Error::InvalidArgument("need at least two elements".into()));
        }
        if !(dt.is_finite() && dt > 0.0) {
            return Err(Error::InvalidArgument(format!("dt must be > 0, got {dt}")));
        }
        let h = config.effective_length() / elements as f64;
        let n = 2 * elements;
        let (ga, ei) = (config.kappa * config.g * config.area, config.e * config.i_d);
        let mut mass = vec![0.0; n];
        let mut stiffness = BandMatrix::zeros(n, 3);
        for node in 1..=elements {
            let share = if node == elements { 0.5 * h } else { h };
            mass[w_index(node)] = config.rho * config.area * share;
            mass[phi_index(node)] = config.rho * config.i_d * share;
        }
        for e in 0..elements {
            // local dofs [w_e, φ_e, w_{e+1}, φ_{e+1}]
            let shear = [-1.0 / h, -0.5, 1.0 / h, -0.5];
            let bend = [0.0, -1.0 / h, 0.0, 1.0 / h];
            let global = [e, e, e + 1, e + 1]
                .iter()
                .zip([true, false, true, false])
                .map(|(&node, is_w)| {
                    (node > 0).then(|| if is_w { w_index(node) } else { phi_index(node) })
                })
                .collect::<Vec<_>>();
            for a in 0..4 {
                for b in 0..4 {
                    let (Some(i), Some(j)) = (global[a], global[b]) else { continue };
                    if i < j {
                        continue;
                    }
                    let v = h * (ga * shear[a] * shear[b] + ei * bend[a] * bend[b]);
                    stiffness.add(i, j, v);
                }
            }
        }
        let mut lhs = BandMatrix::zeros(n, 3).add_scaled(NEWMARK_BETA * dt * dt, &stiffness);
        for (i, m) in mass.iter().enumerate() {
            lhs.add(i, i, *m);
        }
        let newmark = lhs.cholesky()?;
        Ok(Self {
            config: *config,
            elements,
            dt,
            h,
            mass,
            stiffness,
            newmark,
        })
    }

    /// Cell width in `χ`.
    pub fn spacing(&self) -> f64 {
        self.h
    }

    /// Node positions in `χ`, including the clamped node.
    pub fn chi_nodes(&self) -> Vec<f64> {
        (0..=self.elements).map(|i| i as f64 * self.h).collect()
    }

    /// Node positions in `x`.
    pub fn x_nodes(&self) -> Vec<f64> {
        self.chi_nodes()
            .into_iter()
            .map(|c| self.config.inverse_effective_coordinate(c))
            .collect()
    }

    /// `K u`, the gradient of the discrete potential.
    pub fn internal_force(&self, u: &[f64]) -> Vec<f64> {
        self.stiffness.mul_vec(u)
    }

    /// Discrete bending and shear potentials of the displacement vector.
    pub fn potential(&self, u: &[f64]) -> (f64, f64) {
        let (ga, ei) = (
            self.config.kappa * self.config.g * self.config.area,
            self.config.e * self.config.i_d,
        );
        let at = |node: usize, phi: bool| {
            if node == 0 {
                0.0
            } else if phi {
                u[phi_index(node)]
            } else {
                u[w_index(node)]
            }
        };
        let (mut bending, mut shear) = (0.0, 0.0);
        for e in 0..self.elements {
            let kappa = (at(e + 1, true) - at(e, true)) / self.h;
            let gamma = (at(e + 1, false) - at(e, false)) / self.h - 0.5 * (at(e, true) + at(e + 1, true));
            bending += 0.5 * ei * self.h * kappa * kappa;
            shear += 0.5 * ga * self.h * gamma * gamma;
        }
        (bending, shear)
    }

    pub fn kinetic(&self, v: &[f64]) -> f64 {
        0.5 * self.mass.iter().zip(v).map(|(m, v)| m * v * v).sum::<f64>()
    }

    /// Lowest angular frequency of the discrete system by inverse iteration.
    pub fn fundamental_frequency(&self) -> Result<f64> {
        let k = self.stiffness.cholesky()?;
        let n = self.mass.len();
        let mut x: Vec<f64> = (0..n).map(|i| if i % 2 == 0 { (i + 2) as f64 } else { 0.0 }).collect();
        let mut lambda = f64::INFINITY;
        for _ in 0..200 {
            let mx: Vec<f64> = x.iter().zip(&self.mass).map(|(a, m)| a * m).collect();
            let y = k.solve(&mx);
            let ky = self.stiffness.mul_vec(&y);
            let num: f64 = y.iter().zip(&ky).map(|(a, b)| a * b).sum();
            let den: f64 = y.iter().zip(&self.mass).map(|(a, m)| m * a * a).sum();
            let next = num / den;
            let norm = den.sqrt();
            x = y.iter().map(|a| a / norm).collect();
            let done = (next - lambda).abs() <= 1e-14 * next;
            lambda = next;
            if done {
                break;
            }
        }
        Ok(lambda.sqrt())
    }

    fn acceleration(&self, u: &[f64]) -> Vec<f64> {
        self.internal_force(u)
            .iter()
            .zip(&self.mass)
            .map(|(f, m)| -f / m)
            .collect()
    }

    /// State from initial profiles given as functions of `x`.
    pub fn initial_state<W, P, V, Q>(&self, w: W, phi: P, w_dot: V, phi_dot: Q) -> TimoshenkoState
    where
        W: Fn(f64) -> f64,
        P: Fn(f64) -> f64,
        V: Fn(f64) -> f64,
        Q: Fn(f64) -> f64,
    {
        let xs = self.x_nodes();
        let n = 2 * self.elements;
        let (mut u, mut v) = (vec![0.0; n], vec![0.0; n]);
        for node in 1..=self.elements {
            let x = xs[node];
            u[w_index(node)] = w(x);
            u[phi_index(node)] = phi(x);
            v[w_index(node)] = w_dot(x);
            v[phi_index(node)] = phi_dot(x);
        }
        self.state_from_vectors(u, v)
    }

    /// Euler–Bernoulli mode as initial displacement with `φ = ∂_{x,α} w`, at
    /// rest.
    pub fn modal_state(&self, mode: &ModeShape) -> TimoshenkoState {
        let n = 2 * self.elements;
        let mut u = vec![0.0; n];
        for (node, chi) in self.chi_nodes().into_iter().enumerate().skip(1) {
            u[w_index(node)] = mode.eval_chi(chi);
            u[phi_index(node)] = mode.derivative_chi(chi, 1);
        }
        self.state_from_vectors(u, vec![0.0; n])
    }

    pub fn zero_state(&self) -> TimoshenkoState {
        let n = 2 * self.elements;
        self.state_from_vectors(vec![0.0; n], vec![0.0; n])
    }

    fn state_from_vectors(&self, u: Vec<f64>, v: Vec<f64>) -> TimoshenkoState {
        let a = self.acceleration(&u);
        let mut s = TimoshenkoState {
            u: u.clone(),
            v,
            a,
            u_prev: u,
            time: 0.0,
            step: 0,
            energy: EnergyLedger::default(),
            window_energy: 0.0,
        };
        s.energy = self.energy(&s);
        s.window_energy = s.energy.total();
        s
    }

    pub fn energy(&self, state: &TimoshenkoState) -> EnergyLedger {
        let (bending, shear) = self.potential(&state.u);
        EnergyLedger {
            kinetic: self.kinetic(&state.v),
            bending,
            shear,
        }
    }

    /// One Newmark step in place.
    pub fn step(&self, s: &mut TimoshenkoState) -> Result<()> {
        let dt = self.dt;
        let predictor: Vec<f64> = (0..s.u.len())
            .map(|i| s.u[i] + dt * s.v[i] + (0.5 - NEWMARK_BETA) * dt * dt * s.a[i])
            .collect();
        let rhs: Vec<f64> = self.internal_force(&predictor).into_iter().map(|f| -f).collect();
        let a_new = self.newmark.solve(&rhs);
        for i in 0..s.u.len() {
            s.u_prev[i] = s.u[i];
            s.u[i] = predictor[i] + NEWMARK_BETA * dt * dt * a_new[i];
            s.v[i] += dt * ((1.0 - NEWMARK_GAMMA) * s.a[i] + NEWMARK_GAMMA * a_new[i]);
        }
        s.a = a_new;
        s.time += dt;
        s.step += 1;
        s.energy = self.energy(s);
        let total = s.energy.total();
        if !total.is_finite() {
            return Err(Error::StabilityViolation {
                growth: f64::INFINITY,
                step: s.step,
            });
        }
        if s.step.is_multiple_of(ENERGY_CHECK_WINDOW) {
            let base = s.window_energy;
            if base > 0.0 {
                let growth = (total - base) / base;
                if growth > ENERGY_GROWTH_LIMIT {
                    return Err(Error::StabilityViolation { growth, step: s.step });
                }
            }
            s.window_energy = total;
        }
        Ok(())
    }

    /// Run `steps` steps, recording `(t, tip deflection, energy)` every
    /// `stride` steps (and at the start).
    pub fn run(&self, s: &mut TimoshenkoState, steps: usize, stride: usize) -> Result<Vec<TimeSample>> {
        let stride = stride.max(1);
        let mut out = vec![TimeSample::of(s)];
        for i in 1..=steps {
            self.step(s)?;
            if i % stride == 0 {
                out.push(TimeSample::of(s));
            }
        }
        Ok(out)
    }
}

/// Displacements, velocities and accelerations of the free nodes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TimoshenkoState {
    u: Vec<f64>,
    v: Vec<f64>,
    a: Vec<f64>,
    u_prev: Vec<f64>,
    pub time: f64,
    pub step: usize,
    pub energy: EnergyLedger,
    window_energy: f64,
}

impl TimoshenkoState {
    fn nodal(v: &[f64], offset: usize) -> Vec<f64> {
        std::iter::once(0.0).chain(v.iter().skip(offset).step_by(2).copied()).collect()
    }

    /// `w` at every node, clamped node first.
    pub fn w(&self) -> Vec<f64> {
        Self::nodal(&self.u, 0)
    }

    pub fn phi(&self) -> Vec<f64> {
        Self::nodal(&self.u, 1)
    }

    pub fn w_dot(&self) -> Vec<f64> {
        Self::nodal(&self.v, 0)
    }

    pub fn phi_dot(&self) -> Vec<f64> {
        Self::nodal(&self.v, 1)
    }

    /// `w` and `φ` at the previous time level.
    pub fn previous(&self) -> (Vec<f64>, Vec<f64>) {
        (Self::nodal(&self.u_prev, 0), Self::nodal(&self.u_prev, 1))
    }

    pub fn tip_deflection(&self) -> f64 {
        self.u[self.u.len() - 2]
    }

    pub fn displacement_vector(&self) -> &[f64] {
        &self.u
    }

    /// Linear interpolation of `w` at effective coordinate `chi`.
    pub fn w_at_chi(&self, chi: f64, spacing: f64) -> f64 {
        let w = self.w();
        let last = w.len() - 1;
        let t = (chi / spacing).clamp(0.0, last as f64);
        let i = (t.floor() as usize).min(last - 1);
        let f = t - i as f64;
        (1.0 - f) * w[i] + f * w[i + 1]
    }
}

/// The free function form of [`TimoshenkoModel::step`].
pub fn timoshenko_step(state: &TimoshenkoState, model: &TimoshenkoModel) -> Result<TimoshenkoState> {
    let mut next = state.clone();
    model.step(&mut next)?;
    Ok(next)
}

pub fn timoshenko_energy(state: &TimoshenkoState, model: &TimoshenkoModel) -> EnergyLedger {
    model.energy(state)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TimeSample {
    pub t: f64,
    pub tip: f64,
    pub energy: EnergyLedger,
}

impl TimeSample {
    fn of(s: &TimoshenkoState) -> Self {
        Self {
            t: s.time,
            tip: s.tip_deflection(),
            energy: s.energy,
        }
    }
}

/// Angular frequency from upward zero crossings of a sampled signal, with
/// linear interpolation between samples.
pub fn measured_frequency(samples: &[(f64, f64)]) -> Option<f64> {
    let crossings: Vec<f64> = samples
        .windows(2)
        .filter(|w| w[0].1 < 0.0 && w[1].1 >= 0.0)
        .map(|w| {
            let ((t0, y0), (t1, y1)) = (w[0], w[1]);
            t0 - y0 * (t1 - t0) / (y1 - y0)
        })
        .collect();
    if crossings.len() < 2 {
        return None;
    }
    let period = (crossings[crossings.len() - 1] - crossings[0]) / (crossings.len() - 1) as f64;
    Some(2.0 * std::f64::consts::PI / period)
}
