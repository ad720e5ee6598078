//! Circuit-specific trusted setup.
//!
//! A single party samples the five setup secrets, derives the full common
//! reference string from the QAP, and destroys the secrets. Anyone who
//! learns them can forge proofs, so they exist only inside [`setup`] and
//! are overwritten on drop.

use rand::RngCore;

use crate::backend::{G1Point, G2Point, Scalar};
use crate::par::cfg_into_iter;
use crate::r1cs::ConstraintSystem;

use super::qap::r1cs_to_qap;
use super::{Groth16Error, ProvingKey, VerifyingKey};

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// The setup secrets. Never serialized; zeroed on drop.
struct ToxicWaste {
    alpha: Scalar,
    beta: Scalar,
    gamma: Scalar,
    delta: Scalar,
    tau: Scalar,
}

impl ToxicWaste {
    fn sample(rng: &mut impl RngCore) -> Self {
        let mut nonzero = || loop {
            let s = Scalar::random(rng);
            if !s.is_zero() {
                break s;
            }
        };
        ToxicWaste {
            alpha: nonzero(),
            beta: nonzero(),
            gamma: nonzero(),
            delta: nonzero(),
            tau: nonzero(),
        }
    }
}

impl Drop for ToxicWaste {
    fn drop(&mut self) {
        self.alpha = Scalar::ZERO;
        self.beta = Scalar::ZERO;
        self.gamma = Scalar::ZERO;
        self.delta = Scalar::ZERO;
        self.tau = Scalar::ZERO;
    }
}

fn g1_batch(scalars: Vec<Scalar>) -> Vec<G1Point> {
    let g = G1Point::generator();
    cfg_into_iter!(scalars).map(|s| g * s).collect()
}

fn g2_batch(scalars: Vec<Scalar>) -> Vec<G2Point> {
    let g = G2Point::generator();
    cfg_into_iter!(scalars).map(|s| g * s).collect()
}

/// Runs the trusted setup for a frozen constraint system and returns the
/// proving and verifying keys. Deterministic for a fixed rng seed, which
/// only tests use; production callers pass an OS rng.
pub fn setup(
    cs: &ConstraintSystem,
    rng: &mut impl RngCore,
) -> Result<(ProvingKey, VerifyingKey), Groth16Error> {
    let qap = r1cs_to_qap(cs)?;
    let waste = ToxicWaste::sample(rng);
    let circuit_digest = cs.digest();

    let n = qap.domain_size();
    let num_public = qap.num_public();
    let (u_at_tau, v_at_tau, w_at_tau) = qap.evaluate_wires_at(waste.tau);
    let t_at_tau = qap.target_at(waste.tau);

    let gamma_inv = waste.gamma.invert().expect("gamma is nonzero");
    let delta_inv = waste.delta.invert().expect("delta is nonzero");

    // beta*u_i + alpha*v_i + w_i, scaled by 1/gamma for public wires
    // (the verifier's IC) and by 1/delta for private wires (the prover's
    // l-query)
    let combined: Vec<Scalar> = (0..qap.num_wires())
        .map(|i| waste.beta * u_at_tau[i] + waste.alpha * v_at_tau[i] + w_at_tau[i])
        .collect();
    let ic_scalars: Vec<Scalar> = combined[..=num_public]
        .iter()
        .map(|c| *c * gamma_inv)
        .collect();
    let l_scalars: Vec<Scalar> = combined[num_public + 1..]
        .iter()
        .map(|c| *c * delta_inv)
        .collect();

    let mut tau_powers = Vec::with_capacity(n);
    let mut power = Scalar::ONE;
    for _ in 0..n {
        tau_powers.push(power);
        power *= waste.tau;
    }
    // h-query scalars: tau^i * t(tau) / delta for i in 0..n-1
    let h_scalars: Vec<Scalar> = tau_powers[..n - 1]
        .iter()
        .map(|p| *p * t_at_tau * delta_inv)
        .collect();

    let g1 = G1Point::generator();
    let g2 = G2Point::generator();

    let pk = ProvingKey {
        alpha_g1: g1 * waste.alpha,
        beta_g1: g1 * waste.beta,
        beta_g2: g2 * waste.beta,
        delta_g1: g1 * waste.delta,
        delta_g2: g2 * waste.delta,
        tau_g1: g1_batch(tau_powers.clone()),
        tau_g2: g2_batch(tau_powers),
        a_query: g1_batch(u_at_tau),
        b_g1_query: g1_batch(v_at_tau.clone()),
        b_g2_query: g2_batch(v_at_tau),
        l_query: g1_batch(l_scalars),
        h_query: g1_batch(h_scalars),
        circuit_digest,
    };

    let vk = VerifyingKey {
        alpha_g1: pk.alpha_g1,
        beta_g2: pk.beta_g2,
        gamma_g2: g2 * waste.gamma,
        delta_g2: pk.delta_g2,
        ic: g1_batch(ic_scalars),
        circuit_digest,
    };

    Ok((pk, vk))
}
