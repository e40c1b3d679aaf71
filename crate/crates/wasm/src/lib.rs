//! Browser bindings for the two-qubit entanglement optimizer.
//!
//! Three operations are exported: the free-evolution concurrence curve, the
//! closed-form reference curve, and a full optimization run. Each has a plain
//! Rust counterpart so the logic can be tested natively.

use entangle_core::experiments::{analytic_concurrence_reference, free_evolution_curve, HEISENBERG_H_MAX};
use entangle_core::io::StateSpec;
use entangle_core::pmp::{optimize, SolverConfig};
use entangle_core::quantum::{concurrence_real, propagate, real_embedding, schmidt_state, GeneratorSet, StateVector};
use wasm_bindgen::prelude::*;

const MAX_STEPS: usize = 20_000;

fn initial_state(phi: &str, chi: &str, p: f64) -> Result<StateVector, String> {
    let phi: StateSpec = phi.parse()?;
    let chi: StateSpec = chi.parse()?;
    schmidt_state(p, &phi.to_qubit(), &chi.to_qubit()).map_err(|e| e.to_string())
}

fn check_steps(n: usize) -> Result<(), String> {
    if n == 0 || n > MAX_STEPS {
        return Err(format!("step count must be in 1..={MAX_STEPS}, got {n}"));
    }
    Ok(())
}

/// Time points followed by concurrence values, `[t_0..t_n, C_0..C_n]`.
pub fn free_curve(phi: &str, chi: &str, p: f64, tau: f64, n_steps: usize) -> Result<Vec<f64>, String> {
    check_steps(n_steps)?;
    let psi = initial_state(phi, chi, p)?;
    let curve = free_evolution_curve(&psi, tau, n_steps, &GeneratorSet::heisenberg()).map_err(|e| e.to_string())?;
    Ok(curve.iter().map(|c| c.0).chain(curve.iter().map(|c| c.1)).collect())
}

/// `|sin 2(h t + φ0)|` sampled at `n_steps + 1` uniform points in `[0, τ]`.
pub fn reference_curve(p0: f64, tau: f64, n_steps: usize) -> Result<Vec<f64>, String> {
    check_steps(n_steps)?;
    if !(0.0..=1.0).contains(&p0) || !(tau.is_finite() && tau > 0.0) {
        return Err("need 0 <= p0 <= 1 and tau > 0".into());
    }
    Ok((0..=n_steps)
        .map(|k| analytic_concurrence_reference(tau * k as f64 / n_steps as f64, HEISENBERG_H_MAX, p0))
        .collect())
}

/// Result of an optimization run, exposed to JavaScript through getters.
#[wasm_bindgen]
#[derive(Debug, Clone)]
pub struct OptimizeRun {
    t: Vec<f64>,
    u1: Vec<f64>,
    u2: Vec<f64>,
    concurrence: Vec<f64>,
    energy_cost: f64,
    iterations: usize,
    converged: bool,
}

#[wasm_bindgen]
impl OptimizeRun {
    #[wasm_bindgen(getter)]
    pub fn t(&self) -> Vec<f64> {
        self.t.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn u1(&self) -> Vec<f64> {
        self.u1.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn u2(&self) -> Vec<f64> {
        self.u2.clone()
    }

    #[wasm_bindgen(getter)]
    pub fn concurrence(&self) -> Vec<f64> {
        self.concurrence.clone()
    }

    #[wasm_bindgen(getter, js_name = finalConcurrence)]
    pub fn final_concurrence(&self) -> f64 {
        self.concurrence.last().copied().unwrap_or(f64::NAN)
    }

    #[wasm_bindgen(getter, js_name = energyCost)]
    pub fn energy_cost(&self) -> f64 {
        self.energy_cost
    }

    #[wasm_bindgen(getter)]
    pub fn iterations(&self) -> usize {
        self.iterations
    }

    #[wasm_bindgen(getter)]
    pub fn converged(&self) -> bool {
        self.converged
    }
}

#[allow(clippy::too_many_arguments)]
pub fn run_optimization(
    phi: &str,
    chi: &str,
    p: f64,
    tau: f64,
    alpha: f64,
    n_steps: usize,
    max_iterations: usize,
) -> Result<OptimizeRun, String> {
    check_steps(n_steps)?;
    let x0 = real_embedding(&initial_state(phi, chi, p)?);
    let gen = GeneratorSet::heisenberg();
    let config = SolverConfig {
        alpha,
        n_steps,
        max_iterations,
        ..SolverConfig::default()
    };
    let report = optimize(&x0, &gen, tau, &config).map_err(|e| e.to_string())?;
    let controls = &report.optimal_controls;
    let states = propagate(&x0, controls, &gen).map_err(|e| e.to_string())?;
    Ok(OptimizeRun {
        t: (0..=n_steps).map(|k| controls.time(k)).collect(),
        u1: controls.u1().to_vec(),
        u2: controls.u2().to_vec(),
        concurrence: states.iter().map(concurrence_real).collect(),
        energy_cost: report.energy_cost,
        iterations: report.iterations,
        converged: report.converged,
    })
}

#[wasm_bindgen(js_name = freeEvolution)]
pub fn free_evolution_js(phi: &str, chi: &str, p: f64, tau: f64, n_steps: usize) -> Result<Vec<f64>, JsError> {
    free_curve(phi, chi, p, tau, n_steps).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = referenceCurve)]
pub fn reference_curve_js(p0: f64, tau: f64, n_steps: usize) -> Result<Vec<f64>, JsError> {
    reference_curve(p0, tau, n_steps).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen(js_name = optimizeControls)]
pub fn optimize_controls_js(
    phi: &str,
    chi: &str,
    p: f64,
    tau: f64,
    alpha: f64,
    n_steps: usize,
    max_iterations: usize,
) -> Result<OptimizeRun, JsError> {
    run_optimization(phi, chi, p, tau, alpha, n_steps, max_iterations).map_err(|e| JsError::new(&e))
}
