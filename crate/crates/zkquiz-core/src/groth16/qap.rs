//! Reduction from R1CS to a quadratic arithmetic program.
//!
//! Constraint `j` is assigned the evaluation point `d_j = j + 1`. For each
//! wire `i`, the polynomials `u_i`, `v_i`, `w_i` interpolate that wire's
//! coefficients in the A/B/C matrices over the domain. An assignment `z`
//! satisfies the R1CS iff
//! `(sum z_i u_i)(x) * (sum z_i v_i)(x) - (sum z_i w_i)(x)`
//! is divisible by the vanishing polynomial `t`.

use crate::backend::Scalar;
use crate::par::cfg_into_iter;
use crate::r1cs::{Assignment, ConstraintSystem, LinearCombination};

use super::poly::Poly;
use super::Groth16Error;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Quadratic arithmetic program for one frozen constraint system.
#[derive(Clone, Debug)]
pub struct Qap {
    u: Vec<Poly>,
    v: Vec<Poly>,
    w: Vec<Poly>,
    target: Poly,
    domain: Vec<Scalar>,
    num_public: usize,
}

/// Reduces a frozen system with at least one constraint.
pub fn r1cs_to_qap(cs: &ConstraintSystem) -> Result<Qap, Groth16Error> {
    let n = cs.constraints().len();
    if n == 0 {
        return Err(Groth16Error::EmptyCircuit);
    }
    let domain: Vec<Scalar> = (1..=n as u64).map(Scalar::from).collect();
    let basis = Poly::lagrange_basis(&domain);
    let target = Poly::vanishing(&domain);

    // transpose the sparse constraint matrices into per-wire term lists
    let wires = cs.num_wires();
    let mut terms_u: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); wires];
    let mut terms_v: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); wires];
    let mut terms_w: Vec<Vec<(usize, Scalar)>> = vec![Vec::new(); wires];
    for (j, constraint) in cs.constraints().iter().enumerate() {
        let push = |dst: &mut Vec<Vec<(usize, Scalar)>>, lc: &LinearCombination| {
            for (var, coeff) in lc.terms() {
                dst[var.index()].push((j, *coeff));
            }
        };
        push(&mut terms_u, &constraint.a);
        push(&mut terms_v, &constraint.b);
        push(&mut terms_w, &constraint.c);
    }

    let interpolate = |terms: Vec<Vec<(usize, Scalar)>>| -> Vec<Poly> {
        cfg_into_iter!(terms)
            .map(|wire_terms| {
                let mut poly = Poly::zero();
                for (j, coeff) in wire_terms {
                    poly.add_scaled(&basis[j], coeff);
                }
                poly
            })
            .collect()
    };

    let qap = Qap {
        u: interpolate(terms_u),
        v: interpolate(terms_v),
        w: interpolate(terms_w),
        target,
        domain,
        num_public: cs.num_public(),
    };

    // Interpolation check: every nonzero matrix entry is reproduced at
    // its domain point. Zero entries need no evaluation: each wire
    // polynomial is a linear combination of basis indicators that vanish
    // off their own point, so they are zero there by construction.
    for (j, constraint) in cs.constraints().iter().enumerate() {
        let d = qap.domain[j];
        for (lc, polys) in [
            (&constraint.a, &qap.u),
            (&constraint.b, &qap.v),
            (&constraint.c, &qap.w),
        ] {
            for (var, coeff) in lc.terms() {
                assert_eq!(
                    polys[var.index()].eval(d),
                    *coeff,
                    "interpolation failed for wire {} at constraint {j}",
                    var.index()
                );
            }
        }
    }

    Ok(qap)
}

impl Qap {
    /// Domain size = constraint count.
    pub fn domain_size(&self) -> usize {
        self.domain.len()
    }

    pub fn domain(&self) -> &[Scalar] {
        &self.domain
    }

    pub fn num_wires(&self) -> usize {
        self.u.len()
    }

    pub fn num_public(&self) -> usize {
        self.num_public
    }

    /// Evaluates `u_i`, `v_i`, `w_i` at a point, wire by wire.
    pub fn evaluate_wires_at(&self, x: Scalar) -> (Vec<Scalar>, Vec<Scalar>, Vec<Scalar>) {
        let eval = |polys: &[Poly]| -> Vec<Scalar> { polys.iter().map(|p| p.eval(x)).collect() };
        (eval(&self.u), eval(&self.v), eval(&self.w))
    }

    /// Evaluates the target polynomial `t` at a point.
    pub fn target_at(&self, x: Scalar) -> Scalar {
        self.target.eval(x)
    }

    /// The combined polynomials `U = sum z_i u_i`, `V`, `W` for one
    /// assignment.
    pub(crate) fn combine(&self, assignment: &Assignment) -> (Poly, Poly, Poly) {
        let combine_one = |polys: &[Poly]| {
            let mut acc = Poly::zero();
            for (poly, value) in polys.iter().zip(assignment.wires()) {
                if !value.is_zero() {
                    acc.add_scaled(poly, *value);
                }
            }
            acc
        };
        (
            combine_one(&self.u),
            combine_one(&self.v),
            combine_one(&self.w),
        )
    }

    /// Long division of `U*V - W` by the target polynomial. The remainder
    /// is zero exactly when the assignment satisfies the underlying R1CS,
    /// which makes this the divisibility oracle used in tests and the
    /// prover's refusal check.
    pub fn quotient_remainder(
        &self,
        assignment: &Assignment,
    ) -> Result<(Vec<Scalar>, Vec<Scalar>), Groth16Error> {
        if assignment.wires().len() != self.num_wires() {
            return Err(Groth16Error::WireCountMismatch {
                expected: self.num_wires(),
                got: assignment.wires().len(),
            });
        }
        let (u, v, w) = self.combine(assignment);
        let p = u.mul(&v).sub(&w);
        let (quotient, remainder) = p.div_rem(&self.target);
        Ok((
            quotient.coeffs().to_vec(),
            remainder.coeffs().to_vec(),
        ))
    }

    /// First constraint whose inner products fail under this assignment,
    /// found by evaluating the combined polynomials on the domain.
    pub(crate) fn first_violated_constraint(&self, assignment: &Assignment) -> Option<usize> {
        let (u, v, w) = self.combine(assignment);
        self.domain.iter().position(|d| {
            let lhs = u.eval(*d) * v.eval(*d);
            lhs != w.eval(*d)
        })
    }

}
