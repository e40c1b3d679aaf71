use crate::error::{Error, Result};
use crate::pmp::{running_cost, ControlGrid};
use crate::quantum::{concurrence_gradient, interpolate_controls, rk4_step, GeneratorSet, RealState, Vec8};

/// Forward states and backward costates on a shared grid.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub states: Vec<RealState>,
    pub costates: Vec<Vec8>,
}

/// Node-wise gradient with respect to `(u1, u2)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ControlGradient {
    pub g1: Vec<f64>,
    pub g2: Vec<f64>,
}

impl ControlGradient {
    pub fn channel(&self, i: usize) -> &[f64] {
        if i == 0 {
            &self.g1
        } else {
            &self.g2
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.g1.iter().chain(&self.g2).fold(0.0, |m, v| m.max(v.abs()))
    }
}

/// `H = (A(u) x)·p + α (u1² + u2²)`.
pub fn pmp_hamiltonian(x: &RealState, p: &Vec8, u1: f64, u2: f64, gen: &GeneratorSet, alpha: f64) -> f64 {
    let f = gen.apply(u1, u2, x.as_array());
    f.iter().zip(p).map(|(a, b)| a * b).sum::<f64>() + alpha * running_cost(u1, u2)
}

/// Integrates `p' = A(u) p` backward from `p(τ) = ∇Φ = -∇C_ε(x(τ))` on the
/// same grid and control interpolation as the forward pass.
pub fn costate_backward(
    states: &[RealState],
    controls: &ControlGrid,
    gen: &GeneratorSet,
    epsilon: f64,
) -> Result<Vec<Vec8>> {
    let n = controls.n_steps();
    if states.len() != n + 1 {
        return Err(Error::GridMismatch {
            expected: n + 1,
            actual: states.len(),
        });
    }
    let dt = controls.dt();
    let mut costates = vec![[0.0; 8]; n + 1];
    costates[n] = concurrence_gradient(&states[n], epsilon).map(|v| -v);
    for k in (0..n).rev() {
        let [start, mid, end] = interpolate_controls(controls, k);
        costates[k] = rk4_step(gen, &costates[k + 1], -dt, [end, mid, start]);
    }
    Ok(costates)
}

/// Coupling term `(A_i x(t_k))·p(t_k)` for both controls at every node.
fn coupling(trajectory: &Trajectory, gen: &GeneratorSet) -> [Vec<f64>; 2] {
    std::array::from_fn(|i| {
        trajectory
            .states
            .iter()
            .zip(&trajectory.costates)
            .map(|(x, p)| {
                let ax = gen.apply_control(i, x.as_array());
                ax.iter().zip(p).map(|(a, b)| a * b).sum()
            })
            .collect()
    })
}

/// Pointwise `∂H/∂u_i` at the grid nodes: `(A_i x)·p + 2α u_i`. Its zero is
/// the stationarity condition of the minimum principle.
pub fn control_gradient(
    trajectory: &Trajectory,
    controls: &ControlGrid,
    gen: &GeneratorSet,
    alpha: f64,
) -> ControlGradient {
    let [c1, c2] = coupling(trajectory, gen);
    let add_penalty = |c: Vec<f64>, u: &[f64]| c.into_iter().zip(u).map(|(c, u)| c + 2.0 * alpha * u).collect();
    ControlGradient {
        g1: add_penalty(c1, controls.u1()),
        g2: add_penalty(c2, controls.u2()),
    }
}

/// Gradient of the discretized cost with respect to the node values,
/// divided by the trapezoid weights so it approximates the functional
/// gradient `∂H/∂u`.
///
/// The coupling term is projected onto the piecewise-linear hat basis of
/// the controls (tridiagonal mass matrix `dt/6 [1 4 1]`, `dt/6 [2 1]` at
/// the ends); the penalty term is differentiated through the same
/// trapezoid rule that defines `I(τ)`. Multiply node `k` by
/// [`ControlGrid::weight`] to get `∂J/∂u_k`.
pub fn cost_gradient(
    trajectory: &Trajectory,
    controls: &ControlGrid,
    gen: &GeneratorSet,
    alpha: f64,
) -> ControlGradient {
    let n = controls.n_steps();
    let dt = controls.dt();
    let couplings = coupling(trajectory, gen);
    let mut out: [Vec<f64>; 2] = [vec![0.0; n + 1], vec![0.0; n + 1]];
    for (i, c) in couplings.iter().enumerate() {
        let u = controls.channel(i);
        for k in 0..=n {
            let mass = match k {
                0 => dt * (2.0 * c[0] + c[1]) / 6.0,
                k if k == n => dt * (c[n - 1] + 2.0 * c[n]) / 6.0,
                k => dt * (c[k - 1] + 4.0 * c[k] + c[k + 1]) / 6.0,
            };
            let w = controls.weight(k);
            out[i][k] = mass / w + 2.0 * alpha * u[k];
        }
    }
    let [g1, g2] = out;
    ControlGradient { g1, g2 }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantum::{propagate, real_embedding, StateVector};
    use num_complex::Complex64;

    fn random_state(seed: u64) -> RealState {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let psi = std::array::from_fn(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
        real_embedding(&StateVector::normalized(psi).unwrap())
    }

    fn norm(v: &Vec8) -> f64 {
        v.iter().map(|a| a * a).sum::<f64>().sqrt()
    }

    #[test]
    fn hamiltonian_reduces_to_penalty() {
        let gen = GeneratorSet::heisenberg();
        let x = random_state(3);
        assert_eq!(pmp_hamiltonian(&x, &[0.0; 8], 0.0, 0.0, &gen, 0.5), 0.0);
        // (A x)·x = 0 for antisymmetric A
        let p = x.as_array().map(|v| 2.5 * v);
        let h = pmp_hamiltonian(&x, &p, 0.4, -1.1, &gen, 0.3);
        assert!((h - 0.3 * running_cost(0.4, -1.1)).abs() < 1e-14);
    }

    #[test]
    fn hamiltonian_state_gradient_is_costate_field() {
        // -∇ₓH by central differences must equal A(u) p.
        let gen = GeneratorSet::heisenberg();
        let x = random_state(11);
        let p = *random_state(12).as_array();
        let (u1, u2, alpha) = (0.8, -0.3, 0.1);
        let field = gen.apply(u1, u2, &p);
        let h = 1e-6;
        for j in 0..8 {
            let mut xp = x;
            let mut xm = x;
            xp.0[j] += h;
            xm.0[j] -= h;
            let fd = -(pmp_hamiltonian(&xp, &p, u1, u2, &gen, alpha) - pmp_hamiltonian(&xm, &p, u1, u2, &gen, alpha))
                / (2.0 * h);
            assert!((fd - field[j]).abs() < 1e-8, "component {j}: {fd} vs {}", field[j]);
        }
    }

    #[test]
    fn costate_norm_is_conserved() {
        let gen = GeneratorSet::heisenberg();
        let controls = ControlGrid::random_smooth(3.0, 3000, 2.0, 5).unwrap();
        let states = propagate(&random_state(1), &controls, &gen).unwrap();
        let costates = costate_backward(&states, &controls, &gen, 1e-8).unwrap();
        let n0 = norm(&costates[controls.n_steps()]);
        assert!(n0 > 0.0);
        for p in &costates {
            assert!((norm(p) - n0).abs() < 1e-8);
        }
    }

    #[test]
    fn free_costate_is_time_reversible() {
        // With u = 0 the backward solution from p(τ) run forward again from
        // p(0) must land back on p(τ).
        let gen = GeneratorSet::heisenberg();
        let controls = ControlGrid::zeros(2.0, 2000).unwrap();
        let states = propagate(&random_state(21), &controls, &gen).unwrap();
        let costates = costate_backward(&states, &controls, &gen, 1e-8).unwrap();
        let forward = propagate(&RealState(costates[0]), &controls, &gen).unwrap();
        for (a, b) in forward.iter().zip(&costates) {
            for (x, y) in a.as_array().iter().zip(b) {
                assert!((x - y).abs() < 1e-8);
            }
        }
    }

    #[test]
    fn terminal_costate_is_finite_on_product_state() {
        let gen = GeneratorSet::heisenberg();
        let controls = ControlGrid::zeros(1.0, 10).unwrap();
        let x = real_embedding(&StateVector::basis(1));
        let states = vec![x; 11];
        let costates = costate_backward(&states, &controls, &gen, 1e-8).unwrap();
        let n = norm(&costates[10]);
        assert!(n.is_finite() && n <= 2.0);
        assert!(costate_backward(&states[..5], &controls, &gen, 1e-8).is_err());
    }

    #[test]
    fn gradient_reduces_to_penalty_when_costate_vanishes() {
        let gen = GeneratorSet::heisenberg();
        let controls = ControlGrid::random_smooth(1.0, 20, 1.0, 2).unwrap();
        let traj = Trajectory {
            states: vec![random_state(4); 21],
            costates: vec![[0.0; 8]; 21],
        };
        for g in [control_gradient(&traj, &controls, &gen, 0.7), cost_gradient(&traj, &controls, &gen, 0.7)] {
            for i in 0..2 {
                for (gk, uk) in g.channel(i).iter().zip(controls.channel(i)) {
                    assert!((gk - 1.4 * uk).abs() < 1e-15);
                }
            }
        }
    }
}
