//! Monte Carlo oracle for product-measure integrals.
//!
//! Each axis is sampled uniformly in its effective coordinate, which is
//! inverse-transform sampling from the normalized density of states. The
//! generator is ChaCha20 (counter based), so a seed pins the estimate
//! bit for bit.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use serde::{Deserialize, Serialize};

use super::{Box3, PowerMap};
use crate::error::{Error, Result};
use crate::measure::{MultiIndex, WeightSpec};

pub const MIN_SAMPLES: usize = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct McEstimate {
    pub estimate: f64,
    pub stderr: f64,
    pub samples: usize,
}

fn check_samples(n: usize) -> Result<()> {
    if n < MIN_SAMPLES {
        return Err(Error::InvalidArgument(format!(
            "Monte Carlo needs at least {MIN_SAMPLES} samples, got {n}"
        )));
    }
    Ok(())
}

struct Accumulator {
    count: usize,
    mean: f64,
    m2: f64,
}

impl Accumulator {
    fn new() -> Self {
        Self {
            count: 0,
            mean: 0.0,
            m2: 0.0,
        }
    }

    // Welford update
    fn push(&mut self, v: f64) {
        self.count += 1;
        let delta = v - self.mean;
        self.mean += delta / self.count as f64;
        self.m2 += delta * (v - self.mean);
    }

    fn finish(&self, volume: f64) -> McEstimate {
        let n = self.count as f64;
        let var = if self.count > 1 { self.m2 / (n - 1.0) } else { 0.0 };
        McEstimate {
            estimate: volume * self.mean,
            stderr: volume * (var / n).sqrt(),
            samples: self.count,
        }
    }
}

/// `∫_a^b f dμ` estimated from `n` samples uniform in the effective coordinate.
pub fn mc_integrate_1d<F>(f: F, interval: (f64, f64), weight: &WeightSpec, seed: u64, n: usize) -> Result<McEstimate>
where
    F: Fn(f64) -> f64,
{
    check_samples(n)?;
    let (a, b) = interval;
    if !(a < b) {
        return Err(Error::InvalidArgument(format!("interval [{a}, {b}] must have a < b")));
    }
    let map = PowerMap::for_weight(weight);
    let (ua, ub) = (map.forward(a), map.forward(b));
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let mut acc = Accumulator::new();
    for _ in 0..n {
        let u = ua + (ub - ua) * rng.gen::<f64>();
        acc.push(f(map.inverse(u)));
    }
    Ok(acc.finish(ub - ua))
}

/// Product-measure integral with non-integer dimensional weights, estimated
/// from `n` samples. Returns the estimate and its standard error.
pub fn mc_integrate_product<F>(f: F, domain: &Box3, alphas: &MultiIndex, seed: u64, n: usize) -> Result<McEstimate>
where
    F: Fn([f64; 3]) -> f64,
{
    check_samples(n)?;
    let maps = [0, 1, 2].map(|k| PowerMap::for_weight(&WeightSpec::non_integer(alphas.axis(k))));
    let ranges = [0, 1, 2].map(|k| {
        let (a, b) = domain.interval(k);
        (maps[k].forward(a), maps[k].forward(b))
    });
    let volume: f64 = ranges.iter().map(|(lo, hi)| hi - lo).product();
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let mut acc = Accumulator::new();
    for _ in 0..n {
        let mut p = [0.0; 3];
        for k in 0..3 {
            let (lo, hi) = ranges[k];
            p[k] = maps[k].inverse(lo + (hi - lo) * rng.gen::<f64>());
        }
        acc.push(f(p));
    }
    Ok(acc.finish(volume))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measure::{parallelepiped_mass, AxisDimension};

    #[test]
    fn constant_integrand_is_exact() {
        let alphas = MultiIndex::new([0.6, 0.9, 1.2]).unwrap();
        let domain = Box3::new([0.0; 3], [1.5, 2.0, 0.5]).unwrap();
        let mc = mc_integrate_product(|_| 1.0, &domain, &alphas, 7, 2000).unwrap();
        let want = parallelepiped_mass(&alphas, [1.5, 2.0, 0.5], 1.0).unwrap();
        assert!((mc.estimate - want).abs() <= 3.0 * mc.stderr + 1e-12 * want);
        assert_eq!(mc.stderr, 0.0);
    }

    #[test]
    fn seeded_runs_are_identical() {
        let alphas = MultiIndex::new([0.9, 0.8, 0.8]).unwrap();
        let domain = Box3::cube(-3.0, 3.0).unwrap();
        let g = |p: [f64; 3]| (-(p[0] * p[0] + p[1] * p[1] + p[2] * p[2])).exp();
        let a = mc_integrate_product(g, &domain, &alphas, 42, 5000).unwrap();
        let b = mc_integrate_product(g, &domain, &alphas, 42, 5000).unwrap();
        assert_eq!(a.estimate.to_bits(), b.estimate.to_bits());
        assert_eq!(a.stderr.to_bits(), b.stderr.to_bits());
        let c = mc_integrate_product(g, &domain, &alphas, 43, 5000).unwrap();
        assert_ne!(a.estimate.to_bits(), c.estimate.to_bits());
    }

    #[test]
    fn rejects_small_sample_counts() {
        let w = WeightSpec::non_integer(AxisDimension::unit());
        assert!(mc_integrate_1d(|x| x, (0.0, 1.0), &w, 1, 999).is_err());
    }

    #[test]
    fn one_d_estimate_within_error() {
        let w = WeightSpec::non_integer(AxisDimension::new(0.7).unwrap());
        let mc = mc_integrate_1d(|x| x.cos(), (-1.0, 2.0), &w, 3, 200_000).unwrap();
        let exact = super::super::integrate_1d(|x| x.cos(), (-1.0, 2.0), &w, &Default::default()).unwrap();
        assert!((mc.estimate - exact).abs() < 4.0 * mc.stderr);
    }
}
