//! Protocol constants, all in one place.
//!
//! The pairing curve is BLS12-381: a pairing-friendly curve with a 255-bit
//! prime-order scalar field and an estimated security level above 100 bits.
//! Everything else in this crate is expressed against [`crate::backend`]
//! and never names the curve directly.

/// Human-readable name of the pairing curve behind [`crate::backend`].
pub const CURVE_NAME: &str = "BLS12-381";

/// Bit length of the scalar field order `r`.
pub const SCALAR_FIELD_BITS: u32 = 255;

/// Big-endian bytes of the scalar field order
/// `r = 0x73eda753299d7d483339d80809a1d80553bda402fffe5bfeffffffff00000001`.
pub const SCALAR_MODULUS_BE: [u8; 32] = [
    0x73, 0xed, 0xa7, 0x53, 0x29, 0x9d, 0x7d, 0x48, 0x33, 0x39, 0xd8, 0x08, 0x09, 0xa1, 0xd8,
    0x05, 0x53, 0xbd, 0xa4, 0x02, 0xff, 0xfe, 0x5b, 0xfe, 0xff, 0xff, 0xff, 0xff, 0x00, 0x00,
    0x00, 0x01,
];

/// Serialized size of a scalar: 32 bytes, big-endian, canonical.
pub const SCALAR_BYTES: usize = 32;

/// Point encoding tag for the group identity.
pub const POINT_TAG_IDENTITY: u8 = 0x00;
/// Point encoding tag for an affine (non-identity) point.
pub const POINT_TAG_AFFINE: u8 = 0x04;

/// Serialized size of a G1 point: 1 tag byte + two 48-byte coordinates.
pub const G1_BYTES: usize = 1 + 96;
/// Serialized size of a G2 point: 1 tag byte + two 96-byte coordinates.
pub const G2_BYTES: usize = 1 + 192;

/// Seed string for the MiMC round-constant derivation. Versioned: changing
/// it changes every commitment, so it must stay fixed.
pub const MIMC_SEED: &[u8] = b"zkquiz-mimc-v1";

/// MiMC permutation exponent: the smallest odd integer >= 3 coprime with
/// r - 1, so that x -> x^e permutes the field. For BLS12-381 this is 5
/// (3 divides r - 1). Checked against the derivation procedure in tests.
pub const MIMC_EXPONENT: u64 = 5;

/// MiMC round count: ceil(bitlength(r) / log2(e)) = ceil(255 / log2(5)).
pub const MIMC_ROUNDS: usize = 110;

/// Number of questionnaire questions.
pub const QUESTION_COUNT: usize = 10;

/// Questions per result-attribute group. Group A is questions 0..5,
/// group B is questions 5..10.
pub const GROUP_SIZE: usize = 5;

/// Matches required within a group for its attribute bit to be 1.
pub const GROUP_THRESHOLD: u32 = 3;

/// Frozen regression value: constraints in the questionnaire circuit.
///
/// 20 booleanity + 10 match + 2 group sums + 2x7 threshold + 1 result
/// binding + 1 key packing + (3x110 + 1) commitment + 1 recipient.
pub const QUIZ_CONSTRAINTS: usize = 380;

/// Frozen regression value: total wires (constant + public + private).
pub const QUIZ_WIRES: usize = 380;

/// Public inputs of the questionnaire circuit, in order:
/// result, commitment, recipient.
pub const QUIZ_PUBLIC_INPUTS: usize = 3;

/// Magic bytes of the canonical R1CS serialization.
pub const R1CS_MAGIC: &[u8; 4] = b"R1CS";
/// Magic bytes of the proving-key file.
pub const PROVING_KEY_MAGIC: &[u8; 4] = b"GRPK";
/// Magic bytes of the verifying-key file.
pub const VERIFYING_KEY_MAGIC: &[u8; 4] = b"GRVK";
/// Format version shared by all binary files in this crate.
pub const FORMAT_VERSION: u32 = 1;

/// Schema version shared by all JSON artifacts (key files, params, proofs).
pub const SCHEMA_VERSION: u32 = 1;
