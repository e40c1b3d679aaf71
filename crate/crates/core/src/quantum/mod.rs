//! Two-qubit state algebra.
//!
//! Basis order is `|00>, |01>, |10>, |11>` with qubit 1 as the left tensor
//! factor. Real coordinates stack real parts before imaginary parts:
//! `x = (Re psi_1..Re psi_4, Im psi_1..Im psi_4)`.

mod concurrence;
mod generator;
mod operator;
mod propagate;
mod state;

pub use concurrence::{concurrence, concurrence_gradient, concurrence_real, smoothed_concurrence};
pub use generator::{complex_lift, real_embedding, GeneratorSet, Mat8, Vec8};
pub use operator::{
    heisenberg_hamiltonian, local_control_hamiltonians, pauli_x, pauli_y, pauli_z, identity2,
    tensor_product, HermitianOperator, Mat2, Mat4,
};
pub use propagate::{interpolate_controls, propagate, rk4_step};
pub use state::{orthogonal_complement, schmidt_state, QubitState, RealState, StateVector};

pub use num_complex::Complex64;

/// Tolerance used when validating unit norm and Hermiticity of inputs.
pub const VALIDATION_TOL: f64 = 1e-12;
