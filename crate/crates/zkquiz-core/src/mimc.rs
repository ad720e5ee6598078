//! MiMC-style algebraic hash over the scalar field.
//!
//! The questionnaire protocol pins the verifier to one secret answer key
//! via a field-native commitment: a bit-oriented hash would cost tens of
//! thousands of constraints, while this permutation costs three
//! multiplications per round in-circuit. The commitment is the
//! Miyaguchi-Preneel compression of the packed key under a random blind,
//! so the 2^10 key space cannot be brute-forced from the public value.

use std::sync::OnceLock;

use num_bigint::BigUint;
use sha2::{Digest, Sha256};

use crate::backend::Scalar;
use crate::constants::{MIMC_SEED, SCALAR_MODULUS_BE};

/// Parameters of the MiMC permutation: exponent `e`, round count, and the
/// per-round constants (`c_0 = 0`).
///
/// All three are re-derived from fixed rules rather than stored in files;
/// artifacts embed [`MimcParams::digest`] so incompatible builds are
/// detected instead of silently producing different commitments.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MimcParams {
    exponent: u64,
    rounds: usize,
    round_constants: Vec<Scalar>,
}

impl MimcParams {
    /// Derives the standard parameters:
    ///
    /// - `e` is the smallest odd integer >= 3 coprime with `r - 1`, so
    ///   `x -> x^e` permutes the field;
    /// - the round count is `ceil(bitlength(r) / log2(e))`;
    /// - `c_0 = 0` and `c_i = SHA-256(seed || decimal i) mod r`.
    pub fn derive() -> Self {
        let modulus = BigUint::from_bytes_be(&SCALAR_MODULUS_BE);
        let group_order = &modulus - 1u32;

        let mut exponent = 3u64;
        while gcd(BigUint::from(exponent), group_order.clone()) != BigUint::from(1u32) {
            exponent += 2;
        }

        // smallest R with e^R >= 2^bitlength(r), i.e. ceil(bits / log2(e))
        let target = BigUint::from(1u32) << (modulus.bits() as usize);
        let mut rounds = 0usize;
        let mut acc = BigUint::from(1u32);
        while acc < target {
            acc *= exponent;
            rounds += 1;
        }

        let mut round_constants = Vec::with_capacity(rounds);
        round_constants.push(Scalar::ZERO);
        for i in 1..rounds {
            let mut hasher = Sha256::new();
            hasher.update(MIMC_SEED);
            hasher.update(i.to_string().as_bytes());
            let digest: [u8; 32] = hasher.finalize().into();
            round_constants.push(Scalar::from_bytes_reduced(&digest));
        }

        MimcParams {
            exponent,
            rounds,
            round_constants,
        }
    }

    /// Shared copy of the standard parameters.
    pub fn standard() -> &'static MimcParams {
        static PARAMS: OnceLock<MimcParams> = OnceLock::new();
        PARAMS.get_or_init(MimcParams::derive)
    }

    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn rounds(&self) -> usize {
        self.rounds
    }

    pub fn round_constants(&self) -> &[Scalar] {
        &self.round_constants
    }

    /// SHA-256 of the canonical constant serialization (exponent, round
    /// count, then every round constant big-endian).
    pub fn digest(&self) -> [u8; 32] {
        let mut hasher = Sha256::new();
        hasher.update((self.exponent as u32).to_be_bytes());
        hasher.update((self.rounds as u32).to_be_bytes());
        for c in &self.round_constants {
            hasher.update(c.to_bytes());
        }
        hasher.finalize().into()
    }

    #[cfg(test)]
    pub(crate) fn from_parts(exponent: u64, round_constants: Vec<Scalar>) -> Self {
        MimcParams {
            exponent,
            rounds: round_constants.len(),
            round_constants,
        }
    }
}

fn gcd(mut a: BigUint, mut b: BigUint) -> BigUint {
    let zero = BigUint::from(0u32);
    while b != zero {
        let t = &a % &b;
        a = b;
        b = t;
    }
    a
}

/// Keyed permutation: `s <- x; for each round i: s <- (s + k + c_i)^e;
/// return s + k`.
pub fn permutation(x: Scalar, k: Scalar, params: &MimcParams) -> Scalar {
    let mut state = x;
    for c in params.round_constants() {
        state = (state + k + *c).pow(params.exponent());
    }
    state + k
}

/// 2-to-1 compression in Miyaguchi-Preneel mode:
/// `compress(a, b) = permutation(a, b) + a + b`.
pub fn compress(a: Scalar, b: Scalar, params: &MimcParams) -> Scalar {
    permutation(a, b, params) + a + b
}

/// Commitment to a packed answer key under a secret blind.
pub fn commit(key_packed: Scalar, blind: Scalar, params: &MimcParams) -> Scalar {
    compress(key_packed, blind, params)
}
