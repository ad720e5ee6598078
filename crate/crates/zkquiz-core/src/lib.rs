//! Core cryptography for the zkquiz attestation protocol.
//!
//! The crate is layered bottom-up:
//!
//! - [`backend`] — scalar field, source groups, pairing, and multi-scalar
//!   multiplication over BLS12-381. All modules above speak only this
//!   interface; the concrete curve is an implementation detail recorded in
//!   [`constants`].
//! - [`r1cs`] — rank-1 constraint systems, assignments, and the
//!   satisfiability check.
//! - [`mimc`] — the circuit-friendly hash used to commit to the secret
//!   answer key.
//! - [`circuit`] — the questionnaire evaluation circuit and its witness
//!   synthesis.
//! - [`groth16`] — QAP reduction, trusted setup, prover, and verifier for
//!   any frozen constraint system.
//! - [`files`] — JSON artifact schemas shared by the CLI and the proving
//!   service (secret key, public params, proof files).
//!
//! With the default `parallel` feature the prover-side hot loops run on
//! rayon; disabling it falls back to equivalent sequential code paths.
//! Results are bit-identical either way.

mod par;

pub mod backend;
pub mod circuit;
pub mod constants;
pub mod files;
pub mod groth16;
pub mod mimc;
pub mod r1cs;

pub use backend::{
    multi_pairing_is_identity, multi_scalar_mul, multi_scalar_mul_sequential, pairing,
    BackendError, G1Point, G2Point, GtElement, Scalar,
};
pub use circuit::{
    score_plain, Address, AnswerKey, AnswerVector, CircuitError, QuizCircuit, QuizSecrets,
    QuizStatement, ResultCode,
};
pub use groth16::{prove, r1cs_to_qap, setup, verify, Groth16Error, Proof, ProvingKey, Qap, VerifyingKey};
pub use mimc::MimcParams;
pub use r1cs::{
    Assignment, Constraint, ConstraintSystem, ConstraintSystemBuilder, LinearCombination,
    R1csError, SatisfactionReport, VarIndex,
};
