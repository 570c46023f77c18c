//! Identification of three-qubit entanglement from Pauli expectation values.
//!
//! The crate classifies pure three-qubit states exactly through the g
//! polynomials (squared bipartite concurrences written as quadratic
//! polynomials of Pauli expectations), evaluates the T and F witness
//! families on mixed states under arbitrary equal-orientation settings of
//! complementary observables, searches settings numerically, and simulates
//! finite-shot coincidence measurements of every quantity involved.
//!
//! All values are immutable after construction and every operation is a pure
//! function of its inputs, so everything here is safe to share across
//! threads.

pub mod catalog;
pub mod error;
pub mod measurement;
pub mod mixed_witness;
pub mod observables;
pub mod optimizer;
pub mod pure_witness;
pub mod qstate;

pub use error::{Error, Result};
