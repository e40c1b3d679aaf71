use crate::error::{Error, Result};
use crate::pmp::{
    control_gradient, cost_gradient, costate_backward, energy_cost, total_cost, ControlGradient, ControlGrid,
    Trajectory,
};
use crate::quantum::{concurrence_real, propagate, GeneratorSet, RealState};

/// Sufficient-decrease constant of the backtracking line search.
const ARMIJO: f64 = 1e-4;
/// Step halvings tried before an iteration is declared stalled.
const MAX_HALVINGS: usize = 60;
/// Upper clamp on the Barzilai-Borwein trial step.
const MAX_BB_STEP: f64 = 1e6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum UpdateStrategy {
    /// `u ← u - s g` with Armijo backtracking on `J`. The trial step is
    /// `initial_step` on the first iteration and the Barzilai-Borwein step
    /// `<Δu,Δu>/<Δu,Δg>` afterwards.
    #[default]
    Descent,
    /// Move toward the pointwise minimizer of `H`, `u* = -(A_i x)·p / 2α`,
    /// with the same backtracking on the mixing fraction. Needs `α > 0`.
    ExactMin,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SolverConfig {
    /// Weight of the energy cost.
    pub alpha: f64,
    pub n_steps: usize,
    pub max_iterations: usize,
    /// Stop when the largest node-wise gradient magnitude falls below this.
    pub gradient_tolerance: f64,
    /// Trial line-search step of the first descent iteration, and the
    /// fallback whenever the Barzilai-Borwein step is undefined.
    pub initial_step: f64,
    pub epsilon_smoothing: f64,
    pub rng_seed: u64,
    pub trial_control_amplitude: f64,
    pub update: UpdateStrategy,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            alpha: 0.1,
            n_steps: 2000,
            max_iterations: 1000,
            gradient_tolerance: 1e-6,
            initial_step: 1.0,
            epsilon_smoothing: 1e-8,
            rng_seed: 20_090_921,
            trial_control_amplitude: 1e-2,
            update: UpdateStrategy::Descent,
        }
    }
}

impl SolverConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.alpha >= 0.0 && self.alpha.is_finite()) {
            return Err(Error::invalid("alpha", format!("{} must be finite and >= 0", self.alpha)));
        }
        if self.n_steps < 2 {
            return Err(Error::invalid("n_steps", format!("{} < 2", self.n_steps)));
        }
        for (name, v) in [
            ("gradient_tolerance", self.gradient_tolerance),
            ("initial_step", self.initial_step),
            ("epsilon_smoothing", self.epsilon_smoothing),
        ] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::invalid(name, format!("{v} must be positive")));
            }
        }
        if !(self.trial_control_amplitude >= 0.0 && self.trial_control_amplitude.is_finite()) {
            return Err(Error::invalid(
                "trial_control_amplitude",
                format!("{} must be finite and >= 0", self.trial_control_amplitude),
            ));
        }
        if self.update == UpdateStrategy::ExactMin && self.alpha == 0.0 {
            return Err(Error::invalid("update_strategy", "exact_min requires alpha > 0"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OptimizationReport {
    /// Unsmoothed concurrence of the final state, `C(τ)`.
    pub final_concurrence: f64,
    /// `I(τ)`.
    pub energy_cost: f64,
    /// `J` as minimized, with the smoothed terminal term.
    pub total_cost: f64,
    /// `J` at the trial controls followed by `J` after every accepted step.
    pub cost_history: Vec<f64>,
    pub iterations: usize,
    pub converged: bool,
    pub final_gradient_norm: f64,
    pub optimal_controls: ControlGrid,
}

struct Evaluation {
    states: Vec<RealState>,
    cost: f64,
}

fn evaluate(x0: &RealState, controls: &ControlGrid, gen: &GeneratorSet, config: &SolverConfig) -> Result<Evaluation> {
    let states = propagate(x0, controls, gen)?;
    let cost = total_cost(&states, controls, config.alpha, config.epsilon_smoothing)?;
    Ok(Evaluation { states, cost })
}

/// Iterative first-order minimization of `J` over the control grid, starting
/// from seeded trial controls.
///
/// Each iteration propagates the state forward, the costate backward,
/// forms [`cost_gradient`] and takes a backtracking step. Non-convergence
/// is reported through `converged = false`; only a non-finite cost at the
/// starting controls is an error.
pub fn optimize(x0: &RealState, gen: &GeneratorSet, tau: f64, config: &SolverConfig) -> Result<OptimizationReport> {
    config.validate()?;
    let trial = ControlGrid::trial(tau, config.n_steps, config.trial_control_amplitude, config.rng_seed)?;
    optimize_from(x0, gen, trial, config)
}

/// Same as [`optimize`] but with caller-supplied starting controls; their
/// grid defines `τ` and `n_steps`.
pub fn optimize_from(
    x0: &RealState,
    gen: &GeneratorSet,
    start: ControlGrid,
    config: &SolverConfig,
) -> Result<OptimizationReport> {
    config.validate()?;
    let mut controls = start;
    let mut current = evaluate(x0, &controls, gen, config)?;
    if !current.cost.is_finite() {
        return Err(Error::Diverged {
            iteration: 0,
            cost: current.cost,
        });
    }
    let mut history = vec![current.cost];
    let mut previous: Option<(ControlGrid, ControlGradient)> = None;
    let mut iterations = 0;
    let mut converged = false;
    let gradient_norm;

    loop {
        let costates = costate_backward(&current.states, &controls, gen, config.epsilon_smoothing)?;
        let trajectory = Trajectory {
            states: std::mem::take(&mut current.states),
            costates,
        };
        let grad = cost_gradient(&trajectory, &controls, gen, config.alpha);
        current.states = trajectory.states;
        let g_max = grad.max_abs();
        if g_max < config.gradient_tolerance {
            converged = true;
            gradient_norm = g_max;
            break;
        }
        if iterations >= config.max_iterations {
            gradient_norm = g_max;
            break;
        }

        let (direction, step0) = match config.update {
            UpdateStrategy::Descent => {
                let step = previous
                    .as_ref()
                    .and_then(|(u, g)| barzilai_borwein(&controls, &grad, u, g))
                    .unwrap_or(config.initial_step);
                (negated(&grad), step)
            }
            // u* - u = -g / 2α with g the full gradient at u
            UpdateStrategy::ExactMin => {
                let d = negated(&grad);
                let scale = 1.0 / (2.0 * config.alpha);
                (
                    ControlGradient {
                        g1: d.g1.iter().map(|v| v * scale).collect(),
                        g2: d.g2.iter().map(|v| v * scale).collect(),
                    },
                    1.0,
                )
            }
        };
        let slope = weighted_dot(&grad, &direction, &controls);
        previous = Some((controls.clone(), grad));

        let mut step = step0;
        let mut accepted = None;
        for _ in 0..MAX_HALVINGS {
            let candidate = controls.stepped(step, &direction.g1, &direction.g2);
            if candidate.max_abs().is_finite() {
                let eval = evaluate(x0, &candidate, gen, config)?;
                if eval.cost.is_finite() && eval.cost <= current.cost + ARMIJO * step * slope {
                    accepted = Some((candidate, eval));
                    break;
                }
            }
            step *= 0.5;
        }
        match accepted {
            Some((candidate, eval)) => {
                controls = candidate;
                current = eval;
                history.push(current.cost);
                iterations += 1;
            }
            None => {
                gradient_norm = g_max;
                break;
            }
        }
    }

    let final_state = current.states.last().expect("non-empty trajectory");
    Ok(OptimizationReport {
        final_concurrence: concurrence_real(final_state),
        energy_cost: energy_cost(&controls),
        total_cost: current.cost,
        cost_history: history,
        iterations,
        converged,
        final_gradient_norm: gradient_norm,
        optimal_controls: controls,
    })
}

fn negated(g: &ControlGradient) -> ControlGradient {
    ControlGradient {
        g1: g.g1.iter().map(|v| -v).collect(),
        g2: g.g2.iter().map(|v| -v).collect(),
    }
}

fn barzilai_borwein(
    controls: &ControlGrid,
    grad: &ControlGradient,
    prev_controls: &ControlGrid,
    prev_grad: &ControlGradient,
) -> Option<f64> {
    let diff = |a: &[f64], b: &[f64]| -> Vec<f64> { a.iter().zip(b).map(|(x, y)| x - y).collect() };
    let du = ControlGradient {
        g1: diff(controls.u1(), prev_controls.u1()),
        g2: diff(controls.u2(), prev_controls.u2()),
    };
    let dg = ControlGradient {
        g1: diff(&grad.g1, &prev_grad.g1),
        g2: diff(&grad.g2, &prev_grad.g2),
    };
    let ss = weighted_dot(&du, &du, controls);
    let sy = weighted_dot(&du, &dg, controls);
    // negative curvature along the last step: no usable estimate
    (sy > 0.0 && ss > 0.0).then(|| (ss / sy).min(MAX_BB_STEP))
}

/// `Σ_k w_k (a1_k b1_k + a2_k b2_k)`, the discrete L² inner product.
fn weighted_dot(a: &ControlGradient, b: &ControlGradient, grid: &ControlGrid) -> f64 {
    (0..=grid.n_steps())
        .map(|k| grid.weight(k) * (a.g1[k] * b.g1[k] + a.g2[k] * b.g2[k]))
        .sum()
}

/// Pointwise stationarity residual `max |∂H/∂u|` of a finished run.
pub fn stationarity_residual(
    x0: &RealState,
    gen: &GeneratorSet,
    controls: &ControlGrid,
    config: &SolverConfig,
) -> Result<f64> {
    let states = propagate(x0, controls, gen)?;
    let costates = costate_backward(&states, controls, gen, config.epsilon_smoothing)?;
    let traj = Trajectory { states, costates };
    Ok(control_gradient(&traj, controls, gen, config.alpha).max_abs())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantum::{real_embedding, StateVector};

    fn quick(alpha: f64) -> SolverConfig {
        SolverConfig {
            alpha,
            n_steps: 400,
            max_iterations: 200,
            ..SolverConfig::default()
        }
    }

    #[test]
    fn rejects_invalid_configs() {
        assert!(SolverConfig { alpha: -1.0, ..quick(0.1) }.validate().is_err());
        assert!(SolverConfig { n_steps: 1, ..quick(0.1) }.validate().is_err());
        assert!(SolverConfig { gradient_tolerance: 0.0, ..quick(0.1) }.validate().is_err());
        let exact = SolverConfig {
            update: UpdateStrategy::ExactMin,
            ..quick(0.0)
        };
        assert!(exact.validate().is_err());
        assert!(SolverConfig { alpha: 0.0, ..quick(0.0) }.validate().is_ok());
    }

    #[test]
    fn history_is_monotone_and_run_is_deterministic() {
        let x0 = real_embedding(&StateVector::basis(1));
        let gen = GeneratorSet::heisenberg();
        let a = optimize(&x0, &gen, 1.0, &quick(0.05)).unwrap();
        assert!(a.cost_history.windows(2).all(|w| w[1] <= w[0]));
        assert_eq!(a.cost_history.len(), a.iterations + 1);
        let b = optimize(&x0, &gen, 1.0, &quick(0.05)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn huge_trial_controls_abort() {
        let x0 = real_embedding(&StateVector::basis(1));
        let config = SolverConfig {
            trial_control_amplitude: 1e200,
            ..quick(0.1)
        };
        match optimize(&x0, &GeneratorSet::heisenberg(), 1.0, &config) {
            Err(Error::Diverged { iteration: 0, .. }) => {}
            other => panic!("expected divergence, got {other:?}"),
        }
    }

    #[test]
    fn exact_min_strategy_descends() {
        let x0 = real_embedding(&StateVector::basis(1));
        let config = SolverConfig {
            update: UpdateStrategy::ExactMin,
            ..quick(0.1)
        };
        let report = optimize(&x0, &GeneratorSet::heisenberg(), 1.0, &config).unwrap();
        assert!(report.cost_history.windows(2).all(|w| w[1] <= w[0]));
        assert!(report.total_cost < report.cost_history[0]);
    }

    #[test]
    fn converged_flag_matches_reported_gradient() {
        let x0 = real_embedding(&StateVector::basis(1));
        let config = SolverConfig {
            gradient_tolerance: 1e-3,
            ..quick(0.1)
        };
        let r = optimize(&x0, &GeneratorSet::heisenberg(), std::f64::consts::FRAC_PI_8, &config).unwrap();
        assert!(r.converged);
        assert!(r.final_gradient_norm < config.gradient_tolerance);
    }
}
