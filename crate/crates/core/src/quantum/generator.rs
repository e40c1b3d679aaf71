use num_complex::Complex64;

use crate::error::Result;
use crate::quantum::{HermitianOperator, Mat4, RealState, StateVector};

pub type Vec8 = [f64; 8];
pub type Mat8 = [[f64; 8]; 8];

pub fn real_embedding(psi: &StateVector) -> RealState {
    let mut x = [0.0; 8];
    for (k, a) in psi.amplitudes().iter().enumerate() {
        x[k] = a.re;
        x[k + 4] = a.im;
    }
    RealState(x)
}

pub fn complex_lift(x: &RealState) -> StateVector {
    let v = x.as_array();
    StateVector::from_raw(std::array::from_fn(|k| Complex64::new(v[k], v[k + 4])))
}

/// Real 8×8 generators of `ψ' = -i (H_I + u1 H_1 + u2 H_2) ψ` acting on
/// [`RealState`] coordinates, so that `x' = (A0 + u1 A1 + u2 A2) x`.
///
/// For `H = Hr + i Hi` the embedded generator of `-iH` is
/// `[[Hi, Hr], [-Hr, Hi]]`, antisymmetric whenever `H` is Hermitian.
#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorSet {
    drift: Mat8,
    controls: [Mat8; 2],
}

impl GeneratorSet {
    pub fn new(
        interaction: &HermitianOperator,
        local1: &HermitianOperator,
        local2: &HermitianOperator,
    ) -> Self {
        Self {
            drift: embed(interaction),
            controls: [embed(local1), embed(local2)],
        }
    }

    /// Builds the set from raw matrices, rejecting any that is not Hermitian.
    pub fn from_matrices(interaction: Mat4, local1: Mat4, local2: Mat4) -> Result<Self> {
        Ok(Self::new(
            &HermitianOperator::named(interaction, "interaction")?,
            &HermitianOperator::named(local1, "local1")?,
            &HermitianOperator::named(local2, "local2")?,
        ))
    }

    /// Heisenberg coupling with `σx` fields on each qubit.
    pub fn heisenberg() -> Self {
        let (h1, h2) = crate::quantum::local_control_hamiltonians();
        Self::new(&crate::quantum::heisenberg_hamiltonian(), &h1, &h2)
    }

    pub fn drift(&self) -> &Mat8 {
        &self.drift
    }

    pub fn control(&self, i: usize) -> &Mat8 {
        &self.controls[i]
    }

    pub fn matrices(&self) -> [&Mat8; 3] {
        [&self.drift, &self.controls[0], &self.controls[1]]
    }

    /// `(A0 + u1 A1 + u2 A2) v`.
    pub fn apply(&self, u1: f64, u2: f64, v: &Vec8) -> Vec8 {
        let mut out = [0.0; 8];
        let (a0, a1, a2) = (&self.drift, &self.controls[0], &self.controls[1]);
        for (i, o) in out.iter_mut().enumerate() {
            let mut acc = 0.0;
            for j in 0..8 {
                acc += (a0[i][j] + u1 * a1[i][j] + u2 * a2[i][j]) * v[j];
            }
            *o = acc;
        }
        out
    }

    /// `A_{i+1} v` for control index `i` in `0..2`.
    pub fn apply_control(&self, i: usize, v: &Vec8) -> Vec8 {
        mat_vec(&self.controls[i], v)
    }
}

pub(crate) fn mat_vec(m: &Mat8, v: &Vec8) -> Vec8 {
    std::array::from_fn(|i| m[i].iter().zip(v).map(|(a, b)| a * b).sum())
}

fn embed(h: &HermitianOperator) -> Mat8 {
    let m = h.matrix();
    let mut out = [[0.0; 8]; 8];
    for i in 0..4 {
        for j in 0..4 {
            let (hr, hi) = (m[i][j].re, m[i][j].im);
            out[i][j] = hi;
            out[i][j + 4] = hr;
            out[i + 4][j] = -hr;
            out[i + 4][j + 4] = hi;
        }
    }
    out
}
