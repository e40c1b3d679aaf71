use crate::error::{Error, Result};
use crate::pmp::ControlGrid;
use crate::quantum::{smoothed_concurrence, RealState};

/// `u1² + u2²`.
pub fn running_cost(u1: f64, u2: f64) -> f64 {
    u1 * u1 + u2 * u2
}

/// Trapezoid-rule integral of [`running_cost`] over the grid, `I(τ)`.
pub fn energy_cost(controls: &ControlGrid) -> f64 {
    controls
        .u1()
        .iter()
        .zip(controls.u2())
        .enumerate()
        .map(|(k, (&a, &b))| controls.weight(k) * running_cost(a, b))
        .sum()
}

/// `1 - C_ε(x(τ))`.
pub fn terminal_cost(x_final: &RealState, epsilon: f64) -> f64 {
    1.0 - smoothed_concurrence(x_final, epsilon)
}

/// `Φ(x(τ)) + α I(τ)` for a forward trajectory on the controls' grid.
pub fn total_cost(states: &[RealState], controls: &ControlGrid, alpha: f64, epsilon: f64) -> Result<f64> {
    if states.len() != controls.n_steps() + 1 {
        return Err(Error::GridMismatch {
            expected: controls.n_steps() + 1,
            actual: states.len(),
        });
    }
    let last = states.last().expect("grid has at least three nodes");
    let penalty = if alpha == 0.0 { 0.0 } else { alpha * energy_cost(controls) };
    Ok(terminal_cost(last, epsilon) + penalty)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantum::{real_embedding, schmidt_state, QubitState, StateVector};
    use std::f64::consts::PI;

    #[test]
    fn running_cost_values() {
        assert_eq!(running_cost(0.0, 0.0), 0.0);
        assert_eq!(running_cost(1.0, 0.0), 1.0);
        assert_eq!(running_cost(3.0, 4.0), 25.0);
    }

    #[test]
    fn energy_of_simple_controls() {
        assert_eq!(energy_cost(&ControlGrid::zeros(3.0, 10).unwrap()), 0.0);
        let ones = ControlGrid::from_fn(2.0, 10, |_| (1.0, 0.0)).unwrap();
        assert!((energy_cost(&ones) - 2.0).abs() < 1e-14);
        let sine = ControlGrid::from_fn(1.0, 1000, |t| ((PI * t).sin(), 0.0)).unwrap();
        assert!((energy_cost(&sine) - 0.5).abs() < 1e-6);
    }

    #[test]
    fn terminal_cost_limits() {
        let eps = 1e-8;
        let up = QubitState::up_z();
        let bell = real_embedding(&schmidt_state(0.5, &up, &up).unwrap());
        assert!(terminal_cost(&bell, eps).abs() < eps);
        let product = real_embedding(&StateVector::basis(0));
        assert!((terminal_cost(&product, eps) - 1.0).abs() <= eps);
        let quarter = real_embedding(&schmidt_state(0.25, &up, &up).unwrap());
        // smoothing shifts C by at most ε
        assert!((terminal_cost(&quarter, eps) - (1.0 - 3f64.sqrt() / 2.0)).abs() <= eps + 1e-15);
    }

    #[test]
    fn total_cost_is_linear_in_alpha() {
        let ones = ControlGrid::from_fn(1.0, 100, |_| (1.0, 0.0)).unwrap();
        let x = real_embedding(&StateVector::basis(0));
        let states = vec![x; 101];
        let phi = terminal_cost(&x, 1e-8);
        assert_eq!(total_cost(&states, &ones, 0.0, 1e-8).unwrap(), phi);
        assert!((total_cost(&states, &ones, 10.0, 1e-8).unwrap() - (phi + 10.0)).abs() < 1e-12);
        assert!(total_cost(&states[..50], &ones, 1.0, 1e-8).is_err());
    }
}
