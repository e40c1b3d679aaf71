use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::quantum::VALIDATION_TOL;

/// Pure single-qubit state `a0|0> + a1|1>`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QubitState {
    a0: Complex64,
    a1: Complex64,
}

impl QubitState {
    pub fn new(a0: Complex64, a1: Complex64) -> Result<Self> {
        let norm = a0.norm_sqr() + a1.norm_sqr();
        if !norm.is_finite() || (norm - 1.0).abs() > VALIDATION_TOL {
            return Err(Error::invalid("qubit", format!("squared norm {norm} is not 1")));
        }
        Ok(Self { a0, a1 })
    }

    /// Normalizes `(a0, a1)`; fails on the zero vector.
    pub fn normalized(a0: Complex64, a1: Complex64) -> Result<Self> {
        let norm = (a0.norm_sqr() + a1.norm_sqr()).sqrt();
        if !(norm > 0.0 && norm.is_finite()) {
            return Err(Error::invalid("qubit", "cannot normalize a zero or non-finite vector"));
        }
        Ok(Self {
            a0: a0 / norm,
            a1: a1 / norm,
        })
    }

    /// Point on the Bloch sphere: `cos(θ/2)|0> + e^{iϕ} sin(θ/2)|1>`.
    pub fn bloch(theta: f64, phi: f64) -> Self {
        Self {
            a0: Complex64::new((theta / 2.0).cos(), 0.0),
            a1: Complex64::from_polar((theta / 2.0).sin(), phi),
        }
    }

    pub fn up_z() -> Self {
        Self::basis(0)
    }

    pub fn down_z() -> Self {
        Self::basis(1)
    }

    pub fn up_x() -> Self {
        Self::from_pair(1.0, 0.0, 1.0, 0.0)
    }

    pub fn down_x() -> Self {
        Self::from_pair(1.0, 0.0, -1.0, 0.0)
    }

    pub fn up_y() -> Self {
        Self::from_pair(1.0, 0.0, 0.0, 1.0)
    }

    pub fn down_y() -> Self {
        Self::from_pair(1.0, 0.0, 0.0, -1.0)
    }

    fn basis(k: usize) -> Self {
        let one = Complex64::new(1.0, 0.0);
        let zero = Complex64::new(0.0, 0.0);
        if k == 0 {
            Self { a0: one, a1: zero }
        } else {
            Self { a0: zero, a1: one }
        }
    }

    fn from_pair(r0: f64, i0: f64, r1: f64, i1: f64) -> Self {
        Self {
            a0: Complex64::new(r0, i0) * FRAC_1_SQRT_2,
            a1: Complex64::new(r1, i1) * FRAC_1_SQRT_2,
        }
    }

    pub fn amplitudes(&self) -> [Complex64; 2] {
        [self.a0, self.a1]
    }

    pub fn inner(&self, other: &QubitState) -> Complex64 {
        self.a0.conj() * other.a0 + self.a1.conj() * other.a1
    }
}

/// `(a0, a1)⊥ = (-a1*, a0*)`.
pub fn orthogonal_complement(q: &QubitState) -> QubitState {
    QubitState {
        a0: -q.a1.conj(),
        a1: q.a0.conj(),
    }
}

/// Two-qubit pure state in the computational basis.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StateVector([Complex64; 4]);

impl StateVector {
    pub fn new(psi: [Complex64; 4]) -> Result<Self> {
        let norm: f64 = psi.iter().map(|a| a.norm_sqr()).sum();
        if !norm.is_finite() || (norm - 1.0).abs() > VALIDATION_TOL {
            return Err(Error::invalid("state", format!("squared norm {norm} is not 1")));
        }
        Ok(Self(psi))
    }

    pub fn normalized(psi: [Complex64; 4]) -> Result<Self> {
        let norm = psi.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if !(norm > 0.0 && norm.is_finite()) {
            return Err(Error::invalid("state", "cannot normalize a zero or non-finite vector"));
        }
        Ok(Self(psi.map(|a| a / norm)))
    }

    /// Basis state `|k>` with `k` in `0..4` (`|00>, |01>, |10>, |11>`).
    pub fn basis(k: usize) -> Self {
        let mut psi = [Complex64::new(0.0, 0.0); 4];
        psi[k] = Complex64::new(1.0, 0.0);
        Self(psi)
    }

    pub fn product(a: &QubitState, b: &QubitState) -> Self {
        let [a0, a1] = a.amplitudes();
        let [b0, b1] = b.amplitudes();
        Self([a0 * b0, a0 * b1, a1 * b0, a1 * b1])
    }

    /// Skips the norm check. Used for lifting propagated states, which
    /// carry integrator-level drift.
    pub(crate) fn from_raw(psi: [Complex64; 4]) -> Self {
        Self(psi)
    }

    pub fn amplitudes(&self) -> &[Complex64; 4] {
        &self.0
    }

    pub fn norm(&self) -> f64 {
        self.0.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn with_phase(&self, theta: f64) -> Self {
        let phase = Complex64::from_polar(1.0, theta);
        Self(self.0.map(|a| a * phase))
    }
}

/// `√P |φ>⊗|χ> + √(1-P) |φ⊥>⊗|χ⊥>`.
pub fn schmidt_state(p: f64, phi: &QubitState, chi: &QubitState) -> Result<StateVector> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::invalid("p_initial", format!("{p} is outside [0, 1]")));
    }
    let first = StateVector::product(phi, chi);
    let second = StateVector::product(&orthogonal_complement(phi), &orthogonal_complement(chi));
    let (a, b) = (p.sqrt(), (1.0 - p).sqrt());
    let mut psi = [Complex64::new(0.0, 0.0); 4];
    for (k, out) in psi.iter_mut().enumerate() {
        *out = first.0[k] * a + second.0[k] * b;
    }
    Ok(StateVector(psi))
}

/// The 8 real coordinates of a [`StateVector`], with real parts first.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RealState(pub [f64; 8]);

impl RealState {
    pub fn as_array(&self) -> &[f64; 8] {
        &self.0
    }

    pub fn norm(&self) -> f64 {
        self.0.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    pub fn dot(&self, other: &[f64; 8]) -> f64 {
        self.0.iter().zip(other).map(|(a, b)| a * b).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quantum::concurrence;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn close(a: &StateVector, b: &[Complex64; 4], tol: f64) -> bool {
        a.0.iter().zip(b).all(|(x, y)| (x - y).norm() < tol)
    }

    #[test]
    fn complement_of_basis_states() {
        let up = QubitState::up_z();
        assert_eq!(orthogonal_complement(&up).amplitudes(), [c(0.0, 0.0), c(1.0, 0.0)]);
        let down = QubitState::down_z();
        assert_eq!(orthogonal_complement(&down).amplitudes(), [c(-1.0, -0.0), c(0.0, 0.0)]);
        assert!(orthogonal_complement(&down).amplitudes()[0] == c(-1.0, 0.0));
    }

    #[test]
    fn complement_is_orthogonal_for_generic_state() {
        let q = QubitState::normalized(c(0.3, -0.7), c(-0.2, 0.55)).unwrap();
        let qp = orthogonal_complement(&q);
        assert!(q.inner(&qp).norm() < 1e-14);
        assert!((qp.inner(&qp).re - 1.0).abs() < 1e-14);
    }

    #[test]
    fn schmidt_single_term_cases() {
        let up = QubitState::up_z();
        let down = QubitState::down_z();
        let s = schmidt_state(1.0, &up, &down).unwrap();
        assert!(close(&s, &StateVector::basis(1).0, 1e-15));
        // P = 0: |φ⊥>⊗|χ⊥> = |1> ⊗ (-|0>) = -|10>
        let s = schmidt_state(0.0, &up, &down).unwrap();
        assert!(close(&s, &[c(0.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0), c(0.0, 0.0)], 1e-15));
    }

    #[test]
    fn schmidt_half_is_bell_state() {
        let up = QubitState::up_z();
        let s = schmidt_state(0.5, &up, &up).unwrap();
        let h = FRAC_1_SQRT_2;
        assert!(close(&s, &[c(h, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(h, 0.0)], 1e-15));
        assert!((concurrence(&s) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn schmidt_rejects_out_of_range_weight() {
        let up = QubitState::up_z();
        assert!(schmidt_state(-0.1, &up, &up).is_err());
        assert!(schmidt_state(1.5, &up, &up).is_err());
        assert!(schmidt_state(f64::NAN, &up, &up).is_err());
    }

    #[test]
    fn named_states_are_pauli_eigenvectors() {
        // σy (1, ±i)/√2 = ±(1, ±i)/√2
        let up = QubitState::up_y().amplitudes();
        let sy_up = [c(0.0, -1.0) * up[1], c(0.0, 1.0) * up[0]];
        assert!((sy_up[0] - up[0]).norm() < 1e-15 && (sy_up[1] - up[1]).norm() < 1e-15);
        let dn = QubitState::down_y().amplitudes();
        let sy_dn = [c(0.0, -1.0) * dn[1], c(0.0, 1.0) * dn[0]];
        assert!((sy_dn[0] + dn[0]).norm() < 1e-15 && (sy_dn[1] + dn[1]).norm() < 1e-15);
        let dx = QubitState::down_x().amplitudes();
        assert!((dx[1] + dx[0]).norm() < 1e-15);
    }

    #[test]
    fn bloch_poles_match_named_states() {
        assert_eq!(QubitState::bloch(0.0, 0.3).amplitudes()[0], c(1.0, 0.0));
        let b = QubitState::bloch(std::f64::consts::FRAC_PI_2, std::f64::consts::FRAC_PI_2);
        let y = QubitState::up_y();
        assert!((b.inner(&y).norm() - 1.0).abs() < 1e-15);
    }

    #[test]
    fn constructors_validate_norm() {
        assert!(QubitState::new(c(1.0, 0.0), c(1.0, 0.0)).is_err());
        assert!(StateVector::new([c(0.5, 0.0); 4]).is_ok());
        assert!(StateVector::new([c(0.6, 0.0); 4]).is_err());
        assert!(StateVector::normalized([c(0.0, 0.0); 4]).is_err());
    }
}
