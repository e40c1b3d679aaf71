use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::quantum::VALIDATION_TOL;

pub type Mat2 = [[Complex64; 2]; 2];
pub type Mat4 = [[Complex64; 4]; 4];

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

pub fn identity2() -> Mat2 {
    [[ONE, ZERO], [ZERO, ONE]]
}

pub fn pauli_x() -> Mat2 {
    [[ZERO, ONE], [ONE, ZERO]]
}

pub fn pauli_y() -> Mat2 {
    [[ZERO, -I], [I, ZERO]]
}

pub fn pauli_z() -> Mat2 {
    [[ONE, ZERO], [ZERO, -ONE]]
}

/// Kronecker product `a ⊗ b`; `a` acts on qubit 1 (the most significant bit).
pub fn tensor_product(a: &Mat2, b: &Mat2) -> Mat4 {
    let mut out = [[ZERO; 4]; 4];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, entry) in row.iter_mut().enumerate() {
            *entry = a[i / 2][j / 2] * b[i % 2][j % 2];
        }
    }
    out
}

/// A 4×4 Hermitian matrix in units where ħ = 1.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HermitianOperator(Mat4);

impl HermitianOperator {
    /// Wraps `m` after checking `m = m†` entrywise.
    pub fn new(m: Mat4) -> Result<Self> {
        Self::named(m, "operator")
    }

    pub fn named(m: Mat4, name: &'static str) -> Result<Self> {
        for i in 0..4 {
            for j in 0..4 {
                if (m[i][j] - m[j][i].conj()).norm() > VALIDATION_TOL {
                    return Err(Error::NonHermitian(name));
                }
            }
        }
        Ok(Self(m))
    }

    pub fn matrix(&self) -> &Mat4 {
        &self.0
    }

    pub fn apply(&self, v: &[Complex64; 4]) -> [Complex64; 4] {
        let mut out = [ZERO; 4];
        for (o, row) in out.iter_mut().zip(self.0.iter()) {
            *o = row.iter().zip(v).map(|(a, b)| a * b).sum();
        }
        out
    }

    pub fn trace(&self) -> Complex64 {
        (0..4).map(|i| self.0[i][i]).sum()
    }

    /// Entrywise sum, used to assemble `H_T = H_I + u1 H_1 + u2 H_2`.
    pub fn scaled_add(&self, other: &HermitianOperator, scale: f64) -> HermitianOperator {
        let mut m = self.0;
        for (row, orow) in m.iter_mut().zip(other.0.iter()) {
            for (a, b) in row.iter_mut().zip(orow) {
                *a += b * scale;
            }
        }
        HermitianOperator(m)
    }

    pub fn product(&self, other: &HermitianOperator) -> Mat4 {
        let mut out = [[ZERO; 4]; 4];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, entry) in row.iter_mut().enumerate() {
                *entry = (0..4).map(|k| self.0[i][k] * other.0[k][j]).sum();
            }
        }
        out
    }
}

/// `σx⊗σx + σy⊗σy + σz⊗σz`. Spectrum {1, 1, 1, -3}; the singlet is the
/// `-3` eigenvector.
pub fn heisenberg_hamiltonian() -> HermitianOperator {
    let xx = tensor_product(&pauli_x(), &pauli_x());
    let yy = tensor_product(&pauli_y(), &pauli_y());
    let zz = tensor_product(&pauli_z(), &pauli_z());
    let mut m = [[ZERO; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            m[i][j] = xx[i][j] + yy[i][j] + zz[i][j];
        }
    }
    HermitianOperator(m)
}

/// `(σx ⊗ I, I ⊗ σx)`: local fields driving qubit 1 and qubit 2.
pub fn local_control_hamiltonians() -> (HermitianOperator, HermitianOperator) {
    (
        HermitianOperator(tensor_product(&pauli_x(), &identity2())),
        HermitianOperator(tensor_product(&identity2(), &pauli_x())),
    )
}
