//! Proof generation.

use rand::RngCore;

use crate::backend::{multi_scalar_mul, Scalar};
use crate::r1cs::Assignment;

use super::qap::Qap;
use super::{Groth16Error, Proof, ProvingKey};

/// Produces a proof for a satisfying assignment.
///
/// The assignment is checked first and an unsatisfying one is refused:
/// this prover never emits a proof the verifier would reject, so a
/// service built on it cannot hand out garbage. Two fresh randomizers
/// blind the proof, making every run distinct.
pub fn prove(
    pk: &ProvingKey,
    qap: &Qap,
    assignment: &Assignment,
    rng: &mut impl RngCore,
) -> Result<Proof, Groth16Error> {
    let (quotient, remainder) = qap.quotient_remainder(assignment)?;
    if !remainder.is_empty() {
        return Err(Groth16Error::Unsatisfied {
            constraint: qap.first_violated_constraint(assignment),
        });
    }
    if quotient.len() > pk.h_query.len() {
        return Err(Groth16Error::InvalidKeyFile(
            "h-query shorter than the quotient".into(),
        ));
    }

    let wires = assignment.wires();
    let num_public = qap.num_public();
    let private_wires = &wires[num_public + 1..];

    let rho_a = Scalar::random(rng);
    let rho_b = Scalar::random(rng);

    let a = pk.alpha_g1
        + multi_scalar_mul(&pk.a_query, wires)?
        + pk.delta_g1 * rho_a;
    let b_g2 = pk.beta_g2
        + multi_scalar_mul(&pk.b_g2_query, wires)?
        + pk.delta_g2 * rho_b;
    let b_g1 = pk.beta_g1
        + multi_scalar_mul(&pk.b_g1_query, wires)?
        + pk.delta_g1 * rho_b;

    let c = multi_scalar_mul(&pk.l_query, private_wires)?
        + multi_scalar_mul(&pk.h_query[..quotient.len()], &quotient)?
        + a * rho_b
        + b_g1 * rho_a
        - pk.delta_g1 * (rho_a * rho_b);

    Ok(Proof { a, b: b_g2, c })
}
