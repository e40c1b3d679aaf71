use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::pmp::{cost_gradient, costate_backward, total_cost, ControlGrid, SolverConfig, Trajectory};
use crate::quantum::{propagate, GeneratorSet, RealState};

#[derive(Debug, Clone, PartialEq)]
pub struct GradientCheckOptions {
    /// Number of randomly chosen control samples to probe.
    pub samples: usize,
    /// Central-difference step applied to one control sample.
    pub fd_step: f64,
    /// Test hook: the adjoint gradient is multiplied by `1 + corruption`
    /// before comparison.
    pub corruption: f64,
}

impl Default for GradientCheckOptions {
    fn default() -> Self {
        Self {
            samples: 20,
            fd_step: 1e-4,
            corruption: 0.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct GradientSample {
    /// 0 for `u1`, 1 for `u2`.
    pub control: usize,
    pub node: usize,
    pub adjoint: f64,
    pub finite_difference: f64,
    pub relative_error: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GradientCheckReport {
    pub max_relative_error: f64,
    pub samples: Vec<GradientSample>,
}

/// Compares the adjoint [`cost_gradient`] with central finite differences of
/// the discretized `J` at randomly selected control samples, using default
/// [`GradientCheckOptions`]. The probe controls fix `τ` and the grid;
/// `config` supplies `α`, `ε` and the sampling seed.
pub fn gradient_check(
    x0: &RealState,
    gen: &GeneratorSet,
    config: &SolverConfig,
    probe_controls: &ControlGrid,
) -> Result<GradientCheckReport> {
    gradient_check_with(x0, gen, config, probe_controls, &GradientCheckOptions::default())
}

/// Finite differences are divided by the node's trapezoid weight so both
/// sides are functional-gradient values. Each sample's error is taken
/// relative to the largest adjoint gradient component on the grid, which
/// keeps samples near a sign change of `g` from reporting spurious blowups.
pub fn gradient_check_with(
    x0: &RealState,
    gen: &GeneratorSet,
    config: &SolverConfig,
    probe_controls: &ControlGrid,
    options: &GradientCheckOptions,
) -> Result<GradientCheckReport> {
    let (alpha, eps) = (config.alpha, config.epsilon_smoothing);
    let states = propagate(x0, probe_controls, gen)?;
    let costates = costate_backward(&states, probe_controls, gen, eps)?;
    let trajectory = Trajectory { states, costates };
    let grad = cost_gradient(&trajectory, probe_controls, gen, alpha);
    let scale = grad.max_abs() * (1.0 + options.corruption);

    let cost_at = |controls: &ControlGrid| -> Result<f64> {
        let states = propagate(x0, controls, gen)?;
        total_cost(&states, controls, alpha, eps)
    };

    let mut rng = ChaCha8Rng::seed_from_u64(config.rng_seed);
    let n = probe_controls.n_steps();
    let mut samples = Vec::with_capacity(options.samples);
    for _ in 0..options.samples {
        let control = rng.gen_range(0..2);
        let node = rng.gen_range(0..=n);
        let h = options.fd_step;
        let mut plus = probe_controls.clone();
        plus.channel_mut(control)[node] += h;
        let mut minus = probe_controls.clone();
        minus.channel_mut(control)[node] -= h;
        let fd = (cost_at(&plus)? - cost_at(&minus)?) / (2.0 * h) / probe_controls.weight(node);
        let adjoint = grad.channel(control)[node] * (1.0 + options.corruption);
        let relative_error = if scale > 0.0 {
            (adjoint - fd).abs() / scale
        } else {
            (adjoint - fd).abs()
        };
        samples.push(GradientSample {
            control,
            node,
            adjoint,
            finite_difference: fd,
            relative_error,
        });
    }
    let max_relative_error = samples.iter().map(|s| s.relative_error).fold(0.0, f64::max);
    Ok(GradientCheckReport {
        max_relative_error,
        samples,
    })
}
