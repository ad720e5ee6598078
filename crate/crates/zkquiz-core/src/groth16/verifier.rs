//! Proof verification.

use crate::backend::{multi_pairing_is_identity, multi_scalar_mul, Scalar};

use super::{Groth16Error, Proof, VerifyingKey};

/// Checks one proof against the public inputs.
///
/// Computes `L = IC_0 + sum input_i * IC_i` and accepts iff
/// `e(-A, B) * e(alpha, beta) * e(L, gamma) * e(C, delta)` is the target
/// group identity. A wrong public-input count is a usage error, distinct
/// from a verdict of `false`.
pub fn verify(
    vk: &VerifyingKey,
    public_inputs: &[Scalar],
    proof: &Proof,
) -> Result<bool, Groth16Error> {
    let expected = vk.ic.len().saturating_sub(1);
    if public_inputs.len() != expected {
        return Err(Groth16Error::PublicInputCount {
            expected,
            got: public_inputs.len(),
        });
    }
    let l = vk.ic[0] + multi_scalar_mul(&vk.ic[1..], public_inputs)?;
    Ok(multi_pairing_is_identity(&[
        (-proof.a, proof.b),
        (vk.alpha_g1, vk.beta_g2),
        (l, vk.gamma_g2),
        (proof.c, vk.delta_g2),
    ]))
}
