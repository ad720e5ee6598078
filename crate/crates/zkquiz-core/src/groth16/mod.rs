//! Groth16 proof system over any frozen constraint system.
//!
//! The pipeline: [`r1cs_to_qap`] reduces the R1CS to polynomials,
//! [`setup`] runs the one-time circuit-specific trusted setup, [`prove`]
//! builds the three-point proof from a satisfying assignment, and
//! [`verify`] checks it against the public inputs with four pairings.

mod keys;
mod poly;
mod prover;
mod qap;
mod setup;
mod verifier;

pub use keys::{Proof, ProvingKey, VerifyingKey};
pub use prover::prove;
pub use qap::{r1cs_to_qap, Qap};
pub use setup::setup;
pub use verifier::verify;

use thiserror::Error;

use crate::backend::BackendError;

/// Errors from the proof system.
#[derive(Debug, Error)]
pub enum Groth16Error {
    /// Setup over a system with no constraints (degenerate QAP).
    #[error("constraint system has no constraints")]
    EmptyCircuit,
    /// Assignment length does not match the QAP wire count.
    #[error("assignment has {got} wires, QAP expects {expected}")]
    WireCountMismatch {
        /// Wires the QAP expects.
        expected: usize,
        /// Wires supplied.
        got: usize,
    },
    /// Refusal to prove an unsatisfying assignment.
    #[error("assignment does not satisfy the circuit (first violation at {constraint:?})")]
    Unsatisfied {
        /// First violated constraint, when identifiable.
        constraint: Option<usize>,
    },
    /// Verifier given the wrong number of public inputs.
    #[error("expected {expected} public inputs, got {got}")]
    PublicInputCount {
        /// Inputs the verifying key expects.
        expected: usize,
        /// Inputs supplied.
        got: usize,
    },
    /// Key file generated for a different circuit.
    #[error("key file circuit digest does not match the expected circuit")]
    CircuitDigestMismatch,
    /// Malformed key or proof encoding.
    #[error("invalid key material: {0}")]
    InvalidKeyFile(String),
    #[error(transparent)]
    Backend(#[from] BackendError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
