use std::f64::consts::{FRAC_PI_4, PI};

use crate::error::Result;
use crate::pmp::ControlGrid;
use crate::quantum::{concurrence_real, propagate, real_embedding, GeneratorSet, StateVector};

/// Entanglement capability of the Heisenberg coupling.
pub const HEISENBERG_H_MAX: f64 = 2.0;

/// Largest step used by the free-evolution baselines.
const BASELINE_DT: f64 = 1e-3;

fn initial_angle(p0: f64) -> f64 {
    p0.clamp(0.0, 1.0).sqrt().asin()
}

/// Schmidt coefficient along the steepest-entangling trajectory,
/// `P(t) = sin²(h_max t + φ0)` with `sin² φ0 = p0`, `φ0 ∈ [0, π/2]`.
pub fn analytic_schmidt_coefficient(t: f64, h_max: f64, p0: f64) -> f64 {
    (h_max * t + initial_angle(p0)).sin().powi(2)
}

/// `2 sqrt(P(t)(1 - P(t))) = |sin 2(h_max t + φ0)|`.
pub fn analytic_concurrence_reference(t: f64, h_max: f64, p0: f64) -> f64 {
    (2.0 * (h_max * t + initial_angle(p0))).sin().abs()
}

/// Smallest `t ≥ 0` with `P(t) = 1/2`. For `p0 > 1/2` the coefficient first
/// rises to 1 and the crossing lies on the decreasing branch.
pub fn optimal_time(h_max: f64, p0: f64) -> f64 {
    let phi0 = initial_angle(p0);
    if p0 <= 0.5 {
        (FRAC_PI_4 - phi0) / h_max
    } else {
        (0.75 * PI - phi0) / h_max
    }
}

/// Concurrence sampled at the `n_steps + 1` nodes of `[0, tau]` under
/// `u ≡ 0`.
pub fn free_evolution_curve(
    psi0: &StateVector,
    tau: f64,
    n_steps: usize,
    gen: &GeneratorSet,
) -> Result<Vec<(f64, f64)>> {
    let grid = ControlGrid::zeros(tau, n_steps)?;
    let states = propagate(&real_embedding(psi0), &grid, gen)?;
    Ok(states
        .iter()
        .enumerate()
        .map(|(k, x)| (grid.time(k), concurrence_real(x)))
        .collect())
}

/// `C(τ)` without control, integrated with `dt ≤ 1e-3`. The energy cost of
/// this baseline is zero by construction.
pub fn free_evolution_baseline(psi0: &StateVector, tau: f64, gen: &GeneratorSet) -> Result<f64> {
    let n_steps = ((tau / BASELINE_DT).ceil() as usize).max(2);
    let curve = free_evolution_curve(psi0, tau, n_steps, gen)?;
    Ok(curve.last().map(|&(_, c)| c).unwrap_or(0.0))
}
