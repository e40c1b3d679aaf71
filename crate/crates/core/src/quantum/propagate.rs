use crate::error::{Error, Result};
use crate::pmp::ControlGrid;
use crate::quantum::{GeneratorSet, RealState, Vec8};

/// Control values `(u1, u2)` at the start, midpoint and end of step `k`.
/// Controls are linear between grid nodes.
pub fn interpolate_controls(controls: &ControlGrid, k: usize) -> [(f64, f64); 3] {
    let (u1, u2) = (controls.u1(), controls.u2());
    let start = (u1[k], u2[k]);
    let end = (u1[k + 1], u2[k + 1]);
    let mid = (0.5 * (start.0 + end.0), 0.5 * (start.1 + end.1));
    [start, mid, end]
}

/// One classical RK4 step of `v' = A(u(t)) v`. A negative `dt` integrates
/// backward; `stages` are the controls at the step's origin, midpoint and
/// destination in integration order.
pub fn rk4_step(gen: &GeneratorSet, v: &Vec8, dt: f64, stages: [(f64, f64); 3]) -> Vec8 {
    let [s0, sm, s1] = stages;
    let axpy = |y: &Vec8, a: f64, k: &Vec8| -> Vec8 { std::array::from_fn(|i| y[i] + a * k[i]) };
    let k1 = gen.apply(s0.0, s0.1, v);
    let k2 = gen.apply(sm.0, sm.1, &axpy(v, 0.5 * dt, &k1));
    let k3 = gen.apply(sm.0, sm.1, &axpy(v, 0.5 * dt, &k2));
    let k4 = gen.apply(s1.0, s1.1, &axpy(v, dt, &k3));
    std::array::from_fn(|i| v[i] + dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]))
}

/// Integrates `x' = (A0 + u1 A1 + u2 A2) x` over the control grid with
/// fixed-step RK4. Returns `n_steps + 1` states including both endpoints.
pub fn propagate(x0: &RealState, controls: &ControlGrid, gen: &GeneratorSet) -> Result<Vec<RealState>> {
    let n = controls.n_steps();
    if n < 2 {
        return Err(Error::invalid("n_steps", format!("{n} < 2")));
    }
    if !(controls.tau() > 0.0) {
        return Err(Error::invalid("tau", format!("{} must be positive", controls.tau())));
    }
    let dt = controls.dt();
    let mut states = Vec::with_capacity(n + 1);
    let mut x = *x0.as_array();
    states.push(RealState(x));
    for k in 0..n {
        x = rk4_step(gen, &x, dt, interpolate_controls(controls, k));
        states.push(RealState(x));
    }
    Ok(states)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantum::{complex_lift, concurrence, real_embedding, StateVector};
    use num_complex::Complex64;
    use std::f64::consts::FRAC_1_SQRT_2;

    #[test]
    fn free_heisenberg_evolution_of_01() {
        let tau = 2.0;
        let n = 2000;
        let grid = ControlGrid::zeros(tau, n).unwrap();
        let x0 = real_embedding(&StateVector::basis(1));
        let traj = propagate(&x0, &grid, &GeneratorSet::heisenberg()).unwrap();
        assert_eq!(traj.len(), n + 1);
        for (k, x) in traj.iter().enumerate() {
            let t = k as f64 * tau / n as f64;
            let c = concurrence(&complex_lift(x));
            assert!((c - (4.0 * t).sin().abs()).abs() < 1e-8, "t={t}: {c}");
        }
    }

    #[test]
    fn singlet_is_stationary() {
        let h = FRAC_1_SQRT_2;
        let z = Complex64::new(0.0, 0.0);
        let singlet = StateVector::new([z, Complex64::new(h, 0.0), Complex64::new(-h, 0.0), z]).unwrap();
        let grid = ControlGrid::zeros(1.5, 1500).unwrap();
        let traj = propagate(&real_embedding(&singlet), &grid, &GeneratorSet::heisenberg()).unwrap();
        for x in &traj {
            let psi = complex_lift(x);
            assert!((concurrence(&psi) - 1.0).abs() < 1e-9);
            // |<singlet|psi>| = 1: constant up to global phase
            let overlap: Complex64 = singlet
                .amplitudes()
                .iter()
                .zip(psi.amplitudes())
                .map(|(a, b)| a.conj() * b)
                .sum();
            assert!((overlap.norm() - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn rejects_degenerate_grids() {
        // ControlGrid refuses these at construction; check propagate's guard
        // with the unchecked constructor.
        let grid = ControlGrid::new_unchecked(1.0, 1, vec![0.0; 2], vec![0.0; 2]);
        let x0 = real_embedding(&StateVector::basis(0));
        assert!(propagate(&x0, &grid, &GeneratorSet::heisenberg()).is_err());
        let grid = ControlGrid::new_unchecked(0.0, 4, vec![0.0; 5], vec![0.0; 5]);
        assert!(propagate(&x0, &grid, &GeneratorSet::heisenberg()).is_err());
    }
}
