//! Discretized minimum-principle solver.
//!
//! The state follows `x' = A(u) x` with `A(u) = A0 + u1 A1 + u2 A2`, the
//! cost is `J = Φ(x(τ)) + α ∫ (u1² + u2²) dt` with `Φ = 1 - C_ε`, and the
//! costate obeys `p' = -∇ₓH = A(u) p` backward from `p(τ) = ∇Φ(x(τ))`.
//! With that sign the control Hamiltonian `H = (A(u)x)·p + α(u1² + u2²)`
//! is minimized pointwise by the optimal control and `∂H/∂u_i` is the
//! functional gradient of `J`.

mod adjoint;
mod check;
mod controls;
mod cost;
mod optimize;

pub use adjoint::{
    control_gradient, cost_gradient, costate_backward, pmp_hamiltonian, ControlGradient, Trajectory,
};
pub use check::{gradient_check, gradient_check_with, GradientCheckOptions, GradientCheckReport, GradientSample};
pub use controls::ControlGrid;
pub use cost::{energy_cost, running_cost, terminal_cost, total_cost};
pub use optimize::{optimize, optimize_from, stationarity_residual, OptimizationReport, SolverConfig, UpdateStrategy};
