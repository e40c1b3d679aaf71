//! Optimal generation of two-qubit entanglement under local control.
//!
//! Two qubits coupled by a fixed interaction are steered by local control
//! fields `u1(t)`, `u2(t)`. The solver minimizes
//! `J = 1 - C(tau) + alpha * I(tau)`, where `C` is the final concurrence and
//! `I` the integrated control energy, by iterating forward state
//! propagation, backward costate propagation and a gradient update of the
//! controls (a discretized minimum-principle scheme).
//!
//! Module map:
//! - [`quantum`]: two-qubit algebra, states, concurrence, propagation.
//! - [`pmp`]: costs, costates, control gradients, the optimization loop.
//! - [`experiments`]: analytic reference curves and parameter sweeps.
//! - [`io`]: run-configuration documents and CSV result tables.

pub mod error;
pub mod experiments;
pub mod io;
pub mod pmp;
pub mod quantum;

pub use error::{Error, Result};
