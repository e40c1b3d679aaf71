use entangle_core::pmp::ControlGrid;
use entangle_core::quantum::*;
use nalgebra::{Matrix4, SymmetricEigen, Vector4};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn arb_complex() -> impl Strategy<Value = Complex64> {
    (-1.0..1.0f64, -1.0..1.0f64).prop_map(|(re, im)| Complex64::new(re, im))
}

fn arb_state() -> impl Strategy<Value = StateVector> {
    prop::array::uniform4(arb_complex())
        .prop_filter("non-degenerate", |a| a.iter().map(|z| z.norm_sqr()).sum::<f64>() > 1e-3)
        .prop_map(|a| StateVector::normalized(a).unwrap())
}

fn arb_qubit() -> impl Strategy<Value = QubitState> {
    (0.0..std::f64::consts::PI, 0.0..std::f64::consts::TAU).prop_map(|(t, p)| QubitState::bloch(t, p))
}

fn to_nalgebra(h: &HermitianOperator) -> Matrix4<Complex64> {
    let m = h.matrix();
    Matrix4::from_fn(|i, j| m[i][j])
}

/// exp(-i H t) ψ by diagonalizing H.
fn exact_evolution(h: &HermitianOperator, psi: &StateVector, t: f64) -> [Complex64; 4] {
    let eig = SymmetricEigen::new(to_nalgebra(h));
    let v = Vector4::from_iterator(psi.amplitudes().iter().copied());
    let coeffs = eig.eigenvectors.adjoint() * v;
    let phased = Vector4::from_fn(|k, _| coeffs[k] * Complex64::from_polar(1.0, -eig.eigenvalues[k] * t));
    let out = eig.eigenvectors * phased;
    std::array::from_fn(|k| out[k])
}

#[test]
fn heisenberg_spectrum_by_diagonalization() {
    let eig = SymmetricEigen::new(to_nalgebra(&heisenberg_hamiltonian()));
    let mut values: Vec<f64> = eig.eigenvalues.iter().copied().collect();
    values.sort_by(f64::total_cmp);
    let expected = [-3.0, 1.0, 1.0, 1.0];
    for (v, e) in values.iter().zip(expected) {
        assert!((v - e).abs() < 1e-12, "{values:?}");
    }
}

#[test]
fn real_path_matches_complex_exponential() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let gen = GeneratorSet::heisenberg();
    let (h1, h2) = local_control_hamiltonians();
    for _ in 0..5 {
        let psi = StateVector::normalized(std::array::from_fn(|_| {
            Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
        }))
        .unwrap();
        let (u1, u2) = (rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
        let tau = 1.3;
        let grid = ControlGrid::from_fn(tau, 1300, |_| (u1, u2)).unwrap();
        let states = propagate(&real_embedding(&psi), &grid, &gen).unwrap();
        let got = complex_lift(states.last().unwrap());
        let total = heisenberg_hamiltonian().scaled_add(&h1, u1).scaled_add(&h2, u2);
        let expected = exact_evolution(&total, &psi, tau);
        for (a, b) in got.amplitudes().iter().zip(expected) {
            assert!((a - b).norm() < 1e-10, "{a} vs {b}");
        }
    }
}

#[test]
fn concurrence_gradient_matches_finite_differences() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let eps = 1e-8;
    let h = 1e-6;
    for _ in 0..50 {
        let psi = StateVector::normalized(std::array::from_fn(|_| {
            Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
        }))
        .unwrap();
        let x = real_embedding(&psi);
        let g = concurrence_gradient(&x, eps);
        let scale = g.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        for j in 0..8 {
            let mut xp = x;
            let mut xm = x;
            xp.0[j] += h;
            xm.0[j] -= h;
            let fd = (smoothed_concurrence(&xp, eps) - smoothed_concurrence(&xm, eps)) / (2.0 * h);
            let rel = (fd - g[j]).abs() / scale.max(1e-300);
            assert!(rel < 1e-6, "component {j}: analytic {} vs fd {fd}", g[j]);
        }
    }
}

#[test]
fn concurrence_gradient_is_blind_to_global_phase() {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let z = Complex64::new(0.0, 0.0);
    let bell = StateVector::new([Complex64::new(h, 0.0), z, z, Complex64::new(h, 0.0)]).unwrap();
    let x = real_embedding(&bell);
    let g = concurrence_gradient(&x, 1e-8);
    // i·ψ in real coordinates: (a, b) -> (-b, a)
    let (a, b) = x.as_array().split_at(4);
    let phase_dir: Vec<f64> = b.iter().map(|v| -v).chain(a.iter().copied()).collect();
    let proj: f64 = g.iter().zip(&phase_dir).map(|(p, q)| p * q).sum();
    assert!(proj.abs() < 1e-10);
}

#[test]
fn concurrence_stays_in_unit_interval() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for _ in 0..10_000 {
        let psi = StateVector::normalized(std::array::from_fn(|_| {
            Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
        }))
        .unwrap();
        let c = concurrence(&psi);
        assert!((0.0..=1.0 + 1e-15).contains(&c), "{c}");
    }
}

#[test]
fn schmidt_identity_over_random_draws() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..1000 {
        let p: f64 = rng.gen_range(0.0..=1.0);
        let phi = QubitState::bloch(rng.gen_range(0.0..3.2), rng.gen_range(0.0..6.3));
        let chi = QubitState::bloch(rng.gen_range(0.0..3.2), rng.gen_range(0.0..6.3));
        let psi = schmidt_state(p, &phi, &chi).unwrap();
        assert!((psi.norm() - 1.0).abs() < 1e-12);
        assert!((concurrence(&psi) - 2.0 * (p * (1.0 - p)).sqrt()).abs() < 1e-10);
    }
}

proptest! {
    #[test]
    fn global_phase_invariance(psi in arb_state(), theta in 0.0..std::f64::consts::TAU) {
        prop_assert!((concurrence(&psi.with_phase(theta)) - concurrence(&psi)).abs() < 1e-12);
    }

    #[test]
    fn local_unitary_invariance(psi in arb_state(), theta in -3.0..3.0f64) {
        // e^{-iθσx} ⊗ I
        let (c, s) = (theta.cos(), theta.sin());
        let a = psi.amplitudes();
        let mi = Complex64::new(0.0, -s);
        let rotated = StateVector::new([
            a[0] * c + a[2] * mi,
            a[1] * c + a[3] * mi,
            a[2] * c + a[0] * mi,
            a[3] * c + a[1] * mi,
        ]).unwrap();
        prop_assert!((concurrence(&rotated) - concurrence(&psi)).abs() < 1e-10);
    }

    #[test]
    fn complement_is_orthonormal(q in arb_qubit()) {
        let qp = orthogonal_complement(&q);
        prop_assert!(q.inner(&qp).norm() < 1e-14);
        prop_assert!((qp.inner(&qp).re - 1.0).abs() < 1e-14);
    }

    #[test]
    fn embedding_round_trip(psi in arb_state()) {
        let x = real_embedding(&psi);
        prop_assert!((x.norm() - psi.norm()).abs() < 1e-15);
        let back = complex_lift(&x);
        for (a, b) in back.amplitudes().iter().zip(psi.amplitudes()) {
            prop_assert!((a - b).norm() < 1e-15);
        }
    }

    #[test]
    fn propagation_conserves_norm(
        psi in arb_state(),
        seed in 0u64..1000,
        amp in 0.0..3.0f64,
    ) {
        let tau = 2.0;
        let grid = ControlGrid::random_smooth(tau, 2000, amp, seed).unwrap();
        let states = propagate(&real_embedding(&psi), &grid, &GeneratorSet::heisenberg()).unwrap();
        let drift = states.iter().map(|x| (x.norm() - 1.0).abs()).fold(0.0, f64::max);
        prop_assert!(drift / tau < 1e-9, "drift {drift}");
    }
}
