//! Pairing-curve boundary.
//!
//! Everything the rest of the crate needs from the curve lives here:
//! the scalar field [`Scalar`], the source groups [`G1Point`] / [`G2Point`],
//! the target group [`GtElement`], the bilinear [`pairing`], and
//! [`multi_scalar_mul`]. The arithmetic itself is delegated to the
//! audited `bls12_381` implementation; this module owns the byte
//! encodings and the operation surface.
//!
//! Byte layout (shared by every file format in the workspace): points are
//! uncompressed big-endian coordinates behind a 1-byte tag (`0x00` =
//! identity, `0x04` = affine); scalars are 32-byte big-endian, canonical.

mod msm;
mod point;
mod scalar;

pub use msm::{multi_scalar_mul, multi_scalar_mul_sequential};
pub use point::{G1Point, G2Point, GroupElement, GtElement};
pub use scalar::Scalar;

use thiserror::Error;

/// Errors from curve and field operations.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum BackendError {
    /// Attempted to invert the zero scalar.
    #[error("cannot invert the zero scalar")]
    ZeroInversion,
    /// A byte string did not decode to a canonical scalar.
    #[error("non-canonical scalar encoding")]
    InvalidScalar,
    /// A byte string did not decode to a valid group point.
    #[error("invalid point encoding: {0}")]
    InvalidPoint(&'static str),
    /// Paired slices had different lengths.
    #[error("length mismatch: {points} points vs {scalars} scalars")]
    LengthMismatch {
        /// Number of points supplied.
        points: usize,
        /// Number of scalars supplied.
        scalars: usize,
    },
}

/// Bilinear map e: G1 x G2 -> Gt.
pub fn pairing(p: &G1Point, q: &G2Point) -> GtElement {
    GtElement(bls12_381::pairing(&p.to_affine(), &q.to_affine()))
}

/// Returns true iff the product of pairings `e(p_i, q_i)` is the Gt
/// identity. This is the whole of Groth16 verification's pairing work,
/// done with a single Miller loop and one final exponentiation.
pub fn multi_pairing_is_identity(pairs: &[(G1Point, G2Point)]) -> bool {
    let prepared: Vec<(bls12_381::G1Affine, bls12_381::G2Prepared)> = pairs
        .iter()
        .map(|(p, q)| (p.to_affine(), bls12_381::G2Prepared::from(q.to_affine())))
        .collect();
    let terms: Vec<(&bls12_381::G1Affine, &bls12_381::G2Prepared)> =
        prepared.iter().map(|(p, q)| (p, q)).collect();
    let acc = bls12_381::multi_miller_loop(&terms).final_exponentiation();
    acc == GtElement::identity().0
}
