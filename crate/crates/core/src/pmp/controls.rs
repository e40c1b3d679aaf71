use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Control pair `(u1, u2)` sampled at the `n_steps + 1` nodes of a uniform
/// grid over `[0, tau]`. Values between nodes are linear interpolants.
#[derive(Debug, Clone, PartialEq)]
pub struct ControlGrid {
    tau: f64,
    n_steps: usize,
    u1: Vec<f64>,
    u2: Vec<f64>,
}

impl ControlGrid {
    pub fn new(tau: f64, n_steps: usize, u1: Vec<f64>, u2: Vec<f64>) -> Result<Self> {
        if !(tau > 0.0 && tau.is_finite()) {
            return Err(Error::invalid("tau", format!("{tau} must be positive and finite")));
        }
        if n_steps < 2 {
            return Err(Error::invalid("n_steps", format!("{n_steps} < 2")));
        }
        for u in [&u1, &u2] {
            if u.len() != n_steps + 1 {
                return Err(Error::GridMismatch {
                    expected: n_steps + 1,
                    actual: u.len(),
                });
            }
            if u.iter().any(|v| !v.is_finite()) {
                return Err(Error::invalid("controls", "non-finite control sample"));
            }
        }
        Ok(Self { tau, n_steps, u1, u2 })
    }

    #[cfg(test)]
    pub(crate) fn new_unchecked(tau: f64, n_steps: usize, u1: Vec<f64>, u2: Vec<f64>) -> Self {
        Self { tau, n_steps, u1, u2 }
    }

    pub fn zeros(tau: f64, n_steps: usize) -> Result<Self> {
        Self::new(tau, n_steps, vec![0.0; n_steps + 1], vec![0.0; n_steps + 1])
    }

    /// Samples `f(t) -> (u1, u2)` at the grid nodes.
    pub fn from_fn(tau: f64, n_steps: usize, f: impl Fn(f64) -> (f64, f64)) -> Result<Self> {
        let dt = tau / n_steps as f64;
        let (u1, u2) = (0..=n_steps).map(|k| f(k as f64 * dt)).unzip();
        Self::new(tau, n_steps, u1, u2)
    }

    /// Trial controls: `amplitude` plus independent uniform noise in
    /// `[-amplitude, amplitude]` at every node.
    pub fn trial(tau: f64, n_steps: usize, amplitude: f64, seed: u64) -> Result<Self> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut sample = |_| {
            if amplitude > 0.0 {
                amplitude + rng.gen_range(-amplitude..=amplitude)
            } else {
                0.0
            }
        };
        let u1 = (0..=n_steps).map(&mut sample).collect();
        let u2 = (0..=n_steps).map(&mut sample).collect();
        Self::new(tau, n_steps, u1, u2)
    }

    /// Smooth random controls: a few low Fourier modes with random
    /// coefficients of size up to `amplitude`. Used as gradient-check probes.
    pub fn random_smooth(tau: f64, n_steps: usize, amplitude: f64, seed: u64) -> Result<Self> {
        const MODES: usize = 4;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut coeffs = [[0.0; 3]; 2 * MODES];
        for c in coeffs.iter_mut() {
            *c = [
                rng.gen_range(-amplitude..=amplitude),
                rng.gen_range(-amplitude..=amplitude),
                rng.gen_range(0.0..std::f64::consts::TAU),
            ];
        }
        Self::from_fn(tau, n_steps, |t| {
            let s = t / tau;
            let series = |cs: &[[f64; 3]]| -> f64 {
                cs.iter()
                    .enumerate()
                    .map(|(m, [a, b, ph])| {
                        let w = std::f64::consts::PI * (m + 1) as f64 * s;
                        (a * (w + ph).sin() + b * (w + ph).cos()) / (m + 1) as f64
                    })
                    .sum()
            };
            (series(&coeffs[..MODES]), series(&coeffs[MODES..]))
        })
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    pub fn n_steps(&self) -> usize {
        self.n_steps
    }

    pub fn dt(&self) -> f64 {
        self.tau / self.n_steps as f64
    }

    pub fn u1(&self) -> &[f64] {
        &self.u1
    }

    pub fn u2(&self) -> &[f64] {
        &self.u2
    }

    /// Control `i` in `0..2`.
    pub fn channel(&self, i: usize) -> &[f64] {
        if i == 0 {
            &self.u1
        } else {
            &self.u2
        }
    }

    pub(crate) fn channel_mut(&mut self, i: usize) -> &mut [f64] {
        if i == 0 {
            &mut self.u1
        } else {
            &mut self.u2
        }
    }

    pub fn time(&self, k: usize) -> f64 {
        // the last node is exactly tau
        if k == self.n_steps {
            self.tau
        } else {
            k as f64 * self.dt()
        }
    }

    /// Composite trapezoid weight of node `k`.
    pub fn weight(&self, k: usize) -> f64 {
        if k == 0 || k == self.n_steps {
            0.5 * self.dt()
        } else {
            self.dt()
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.u1.iter().chain(&self.u2).fold(0.0, |m, v| m.max(v.abs()))
    }

    /// `self + step * direction`, node by node. The result may hold
    /// non-finite values if the step overflows; callers evaluate the cost
    /// and reject such points.
    pub(crate) fn stepped(&self, step: f64, d1: &[f64], d2: &[f64]) -> Self {
        let add = |u: &[f64], d: &[f64]| u.iter().zip(d).map(|(a, b)| a + step * b).collect();
        Self {
            tau: self.tau,
            n_steps: self.n_steps,
            u1: add(&self.u1, d1),
            u2: add(&self.u2, d2),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validates_shape_and_values() {
        assert!(ControlGrid::new(1.0, 4, vec![0.0; 5], vec![0.0; 5]).is_ok());
        assert_eq!(
            ControlGrid::new(1.0, 4, vec![0.0; 4], vec![0.0; 5]),
            Err(Error::GridMismatch { expected: 5, actual: 4 })
        );
        assert!(ControlGrid::new(1.0, 1, vec![0.0; 2], vec![0.0; 2]).is_err());
        assert!(ControlGrid::new(-1.0, 4, vec![0.0; 5], vec![0.0; 5]).is_err());
        assert!(ControlGrid::new(1.0, 4, vec![f64::NAN; 5], vec![0.0; 5]).is_err());
    }

    #[test]
    fn trial_controls_are_seeded_and_bounded() {
        let a = ControlGrid::trial(2.0, 100, 0.01, 7).unwrap();
        let b = ControlGrid::trial(2.0, 100, 0.01, 7).unwrap();
        let c = ControlGrid::trial(2.0, 100, 0.01, 8).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
        assert!(a.u1().iter().chain(a.u2()).all(|&v| (0.0..=0.02).contains(&v)));
        assert_eq!(ControlGrid::trial(2.0, 10, 0.0, 1).unwrap().max_abs(), 0.0);
    }

    #[test]
    fn weights_sum_to_horizon() {
        let g = ControlGrid::zeros(3.0, 7).unwrap();
        let total: f64 = (0..=7).map(|k| g.weight(k)).sum();
        assert!((total - 3.0).abs() < 1e-15);
        assert_eq!(g.time(7), 3.0);
    }
}
