use crate::error::{Error, Result};
use crate::pmp::{optimize, SolverConfig};
use crate::quantum::{real_embedding, schmidt_state, GeneratorSet, QubitState};

#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub tau_grid: Vec<f64>,
    pub alpha_values: Vec<f64>,
    pub p_values: Vec<f64>,
    pub initial_phi: QubitState,
    pub initial_chi: QubitState,
    /// Shared solver settings; `alpha` is overridden per sweep point.
    pub solver: SolverConfig,
    /// Entanglement capability of the interaction.
    pub h_max: f64,
}

impl SweepSpec {
    pub fn validate(&self) -> Result<()> {
        check_grid("tau_grid", &self.tau_grid)?;
        check_grid("alpha_values", &self.alpha_values)?;
        check_grid("p_values", &self.p_values)?;
        if self.tau_grid[0] <= 0.0 {
            return Err(Error::invalid("tau_grid", "values must be positive"));
        }
        if self.alpha_values[0] < 0.0 {
            return Err(Error::invalid("alpha_values", "values must be >= 0"));
        }
        if self.p_values[0] < 0.0 || self.p_values[self.p_values.len() - 1] > 1.0 {
            return Err(Error::invalid("p_values", "values must lie in [0, 1]"));
        }
        if !(self.h_max > 0.0 && self.h_max.is_finite()) {
            return Err(Error::invalid("h_max", format!("{} must be positive", self.h_max)));
        }
        self.solver.validate()
    }
}

fn check_grid(name: &'static str, values: &[f64]) -> Result<()> {
    if values.is_empty() {
        return Err(Error::invalid(name, "grid is empty"));
    }
    if values.iter().any(|v| !v.is_finite()) {
        return Err(Error::invalid(name, "grid holds non-finite values"));
    }
    if values.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::invalid(name, "grid must be strictly increasing"));
    }
    Ok(())
}

/// Outcome of one optimization within a sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRecord {
    pub tau: f64,
    pub alpha: f64,
    pub p_initial: f64,
    pub final_concurrence: f64,
    pub energy_cost: f64,
    pub total_cost: f64,
    pub iterations: usize,
    pub converged: bool,
    /// Solver error for this point, if any. Numeric fields are NaN then.
    pub failure: Option<String>,
}

impl SweepRecord {
    pub fn failed(&self) -> bool {
        self.failure.is_some()
    }
}

#[derive(Debug, Clone, Copy)]
struct Point {
    tau: f64,
    alpha: f64,
    p: f64,
}

fn run_point(spec: &SweepSpec, gen: &GeneratorSet, pt: Point) -> SweepRecord {
    let config = SolverConfig {
        alpha: pt.alpha,
        ..spec.solver.clone()
    };
    let outcome = schmidt_state(pt.p, &spec.initial_phi, &spec.initial_chi)
        .and_then(|psi| optimize(&real_embedding(&psi), gen, pt.tau, &config));
    match outcome {
        Ok(r) => SweepRecord {
            tau: pt.tau,
            alpha: pt.alpha,
            p_initial: pt.p,
            final_concurrence: r.final_concurrence,
            energy_cost: r.energy_cost,
            total_cost: r.total_cost,
            iterations: r.iterations,
            converged: r.converged,
            failure: None,
        },
        Err(e) => SweepRecord {
            tau: pt.tau,
            alpha: pt.alpha,
            p_initial: pt.p,
            final_concurrence: f64::NAN,
            energy_cost: f64::NAN,
            total_cost: f64::NAN,
            iterations: 0,
            converged: false,
            failure: Some(e.to_string()),
        },
    }
}

fn run_all(spec: &SweepSpec, gen: &GeneratorSet, points: Vec<Point>) -> Vec<SweepRecord> {
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        points.into_par_iter().map(|pt| run_point(spec, gen, pt)).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        points.into_iter().map(|pt| run_point(spec, gen, pt)).collect()
    }
}

/// `C(τ)`, `I(τ)` curves: for every `P`, then every `α`, one optimization
/// per `τ`. Records come back in that grid order regardless of scheduling.
pub fn sweep_tau(spec: &SweepSpec, gen: &GeneratorSet) -> Result<Vec<SweepRecord>> {
    spec.validate()?;
    let mut points = Vec::new();
    for &p in &spec.p_values {
        for &alpha in &spec.alpha_values {
            points.extend(spec.tau_grid.iter().map(|&tau| Point { tau, alpha, p }));
        }
    }
    Ok(run_all(spec, gen, points))
}

/// Same points as [`sweep_tau`] grouped by initial Schmidt coefficient:
/// for every `α`, then every `P`, one optimization per `τ`.
pub fn sweep_p(spec: &SweepSpec, gen: &GeneratorSet) -> Result<Vec<SweepRecord>> {
    spec.validate()?;
    let mut points = Vec::new();
    for &alpha in &spec.alpha_values {
        for &p in &spec.p_values {
            points.extend(spec.tau_grid.iter().map(|&tau| Point { tau, alpha, p }));
        }
    }
    Ok(run_all(spec, gen, points))
}
