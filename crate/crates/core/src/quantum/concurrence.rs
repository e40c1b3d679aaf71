use num_complex::Complex64;

use crate::quantum::{pauli_y, tensor_product, RealState, StateVector, Vec8};

/// `σy ⊗ σy`; all entries are real.
fn spin_flip() -> [[f64; 4]; 4] {
    tensor_product(&pauli_y(), &pauli_y()).map(|row| row.map(|z| z.re))
}

/// `C = |<ψ| σy⊗σy |ψ*>|`, i.e. the modulus of
/// `Σ_ij ψ_i* (σy⊗σy)_ij ψ_j*`. Equals `2|ψ00 ψ11 - ψ01 ψ10|`.
pub fn concurrence(psi: &StateVector) -> f64 {
    let y = spin_flip();
    let a = psi.amplitudes();
    let mut c = Complex64::new(0.0, 0.0);
    for i in 0..4 {
        for j in 0..4 {
            c += a[i].conj() * y[i][j] * a[j].conj();
        }
    }
    c.norm()
}

/// Real and imaginary parts of `ψᵀ Y ψ` with `ψ = a + ib`:
/// `(aᵀYa - bᵀYb, 2 aᵀYb)`. Its modulus is the concurrence.
fn bilinear_parts(x: &Vec8, y: &[[f64; 4]; 4]) -> (f64, f64, [f64; 4], [f64; 4]) {
    let (a, b) = x.split_at(4);
    let ya: [f64; 4] = std::array::from_fn(|i| (0..4).map(|j| y[i][j] * a[j]).sum());
    let yb: [f64; 4] = std::array::from_fn(|i| (0..4).map(|j| y[i][j] * b[j]).sum());
    let aya: f64 = (0..4).map(|i| a[i] * ya[i]).sum();
    let byb: f64 = (0..4).map(|i| b[i] * yb[i]).sum();
    let ayb: f64 = (0..4).map(|i| a[i] * yb[i]).sum();
    (aya - byb, 2.0 * ayb, ya, yb)
}

/// Concurrence evaluated directly on real coordinates.
pub fn concurrence_real(x: &RealState) -> f64 {
    let (re, im, _, _) = bilinear_parts(x.as_array(), &spin_flip());
    re.hypot(im)
}

/// `C_ε = sqrt(|c|² + ε²) - ε`, differentiable everywhere including `c = 0`.
pub fn smoothed_concurrence(x: &RealState, epsilon: f64) -> f64 {
    let (re, im, _, _) = bilinear_parts(x.as_array(), &spin_flip());
    (re * re + im * im + epsilon * epsilon).sqrt() - epsilon
}

/// Gradient of [`smoothed_concurrence`] with respect to the 8 real
/// coordinates.
pub fn concurrence_gradient(x: &RealState, epsilon: f64) -> Vec8 {
    let (re, im, ya, yb) = bilinear_parts(x.as_array(), &spin_flip());
    let denom = (re * re + im * im + epsilon * epsilon).sqrt();
    if denom == 0.0 {
        return [0.0; 8];
    }
    // ∂re/∂a = 2Ya, ∂re/∂b = -2Yb, ∂im/∂a = 2Yb, ∂im/∂b = 2Ya
    let mut g = [0.0; 8];
    for k in 0..4 {
        g[k] = 2.0 * (re * ya[k] + im * yb[k]) / denom;
        g[k + 4] = 2.0 * (-re * yb[k] + im * ya[k]) / denom;
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantum::{real_embedding, schmidt_state, QubitState};
    use std::f64::consts::FRAC_1_SQRT_2;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn product_state_has_zero_concurrence() {
        assert_eq!(concurrence(&StateVector::basis(1)), 0.0);
    }

    #[test]
    fn singlet_is_maximally_entangled() {
        let h = FRAC_1_SQRT_2;
        let singlet = StateVector::new([c(0.0, 0.0), c(h, 0.0), c(-h, 0.0), c(0.0, 0.0)]).unwrap();
        assert!((concurrence(&singlet) - 1.0).abs() < 1e-15);
        assert!((concurrence_real(&real_embedding(&singlet)) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn schmidt_quarter_weight() {
        let up = QubitState::up_z();
        let s = schmidt_state(0.25, &up, &up).unwrap();
        let expected = 3f64.sqrt() / 2.0;
        assert!((concurrence(&s) - expected).abs() < 1e-15);
    }

    #[test]
    fn gradient_vanishes_on_product_state_and_is_bounded() {
        let x = real_embedding(&StateVector::basis(1));
        let g = concurrence_gradient(&x, 1e-8);
        let norm = g.iter().map(|v| v * v).sum::<f64>().sqrt();
        assert!(norm.is_finite());
        // |∇|c|| ≤ 2‖Y‖‖x‖ = 2
        assert!(norm <= 2.0);
    }

    #[test]
    fn gradient_matches_closed_form_away_from_zero() {
        // On the Bell state |c| = 1, so ∇C_ε ≈ ∇|c|; check against the
        // explicit formula C = 2|ψ00ψ11 - ψ01ψ10| differentiated by hand.
        let h = FRAC_1_SQRT_2;
        let bell = StateVector::new([c(h, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(h, 0.0)]).unwrap();
        let g = concurrence_gradient(&real_embedding(&bell), 0.0);
        // c' = ψ00ψ11 - ψ01ψ10 = 1/2, ∂|2c'|/∂Re ψ00 = 2 Re ψ11 = √2
        let expected = [2.0 * h, 0.0, 0.0, 2.0 * h, 0.0, 0.0, 0.0, 0.0];
        for (a, b) in g.iter().zip(expected) {
            assert!((a - b).abs() < 1e-14, "{g:?}");
        }
    }
}
