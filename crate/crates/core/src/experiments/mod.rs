//! Analytic reference curves and parameter sweeps over `(τ, α, P)`.

mod analytic;
mod sweep;

pub use analytic::{
    analytic_concurrence_reference, analytic_schmidt_coefficient, free_evolution_baseline, free_evolution_curve,
    optimal_time, HEISENBERG_H_MAX,
};
pub use sweep::{sweep_p, sweep_tau, SweepRecord, SweepSpec};
