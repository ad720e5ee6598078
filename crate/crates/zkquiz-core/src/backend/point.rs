use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use group::Curve;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{BackendError, Scalar};
use crate::constants::{G1_BYTES, G2_BYTES, POINT_TAG_AFFINE, POINT_TAG_IDENTITY};

/// Common surface of the two source groups, enough for the Groth16
/// prover and verifier to be written once.
pub trait GroupElement:
    Copy
    + PartialEq
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Neg<Output = Self>
    + Mul<Scalar, Output = Self>
{
    /// Group identity element.
    fn identity() -> Self;
    /// Fixed group generator.
    fn generator() -> Self;
    fn is_identity(&self) -> bool;
}

macro_rules! source_group {
    ($name:ident, $inner:ty, $affine:ty, $len:expr, $coord_len:expr, $doc:literal) => {
        #[doc = $doc]
        ///
        /// Every value is on-curve and in the prime-order subgroup; the
        /// byte decoder enforces both.
        #[derive(Clone, Copy, PartialEq, Eq)]
        pub struct $name(pub(crate) $inner);

        impl $name {
            /// Serialized size: tag byte plus two fixed-width coordinates.
            pub const SERIALIZED_LEN: usize = $len;

            /// Group identity element.
            pub fn identity() -> Self {
                Self(<$inner>::identity())
            }

            /// Fixed group generator.
            pub fn generator() -> Self {
                Self(<$inner>::generator())
            }

            pub fn is_identity(&self) -> bool {
                bool::from(self.0.is_identity())
            }

            pub(crate) fn to_affine(self) -> $affine {
                self.0.to_affine()
            }

            /// Tagged uncompressed encoding (see module docs).
            pub fn to_bytes(&self) -> Vec<u8> {
                let mut out = vec![0u8; $len];
                if self.is_identity() {
                    out[0] = POINT_TAG_IDENTITY;
                } else {
                    out[0] = POINT_TAG_AFFINE;
                    // For canonical coordinates the top three bits of the
                    // uncompressed encoding are zero, so it is exactly the
                    // raw big-endian coordinate pair.
                    out[1..].copy_from_slice(&self.0.to_affine().to_uncompressed());
                }
                out
            }

            /// Decodes and fully validates a point: tag, coordinate
            /// canonicity, curve membership, and subgroup membership.
            pub fn from_bytes(bytes: &[u8]) -> Result<Self, BackendError> {
                if bytes.len() != $len {
                    return Err(BackendError::InvalidPoint("wrong length"));
                }
                match bytes[0] {
                    POINT_TAG_IDENTITY => {
                        if bytes[1..].iter().any(|b| *b != 0) {
                            return Err(BackendError::InvalidPoint(
                                "identity tag with nonzero coordinates",
                            ));
                        }
                        Ok(Self(<$inner>::identity()))
                    }
                    POINT_TAG_AFFINE => {
                        if bytes[1] & 0xe0 != 0 {
                            // would collide with the encoding flag bits
                            return Err(BackendError::InvalidPoint("non-canonical coordinate"));
                        }
                        let mut raw = [0u8; $len - 1];
                        raw.copy_from_slice(&bytes[1..]);
                        let parsed = <$affine>::from_uncompressed(&raw);
                        if bool::from(parsed.is_some()) {
                            let affine = parsed.unwrap();
                            if bool::from(affine.is_identity()) {
                                return Err(BackendError::InvalidPoint(
                                    "identity with affine tag",
                                ));
                            }
                            Ok(Self(<$inner>::from(affine)))
                        } else {
                            Err(BackendError::InvalidPoint("not on curve or wrong subgroup"))
                        }
                    }
                    _ => Err(BackendError::InvalidPoint("unknown tag")),
                }
            }

            /// Lowercase `0x` hex of `to_bytes`.
            pub fn to_hex(&self) -> String {
                format!("0x{}", hex::encode(self.to_bytes()))
            }

            /// Parses the `to_hex` encoding.
            pub fn from_hex(s: &str) -> Result<Self, BackendError> {
                let digits = s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")).unwrap_or(s);
                let raw = hex::decode(digits).map_err(|_| BackendError::InvalidPoint("bad hex"))?;
                Self::from_bytes(&raw)
            }
        }

        impl GroupElement for $name {
            fn identity() -> Self {
                $name::identity()
            }

            fn generator() -> Self {
                $name::generator()
            }

            fn is_identity(&self) -> bool {
                $name::is_identity(self)
            }
        }

        impl Add for $name {
            type Output = $name;
            fn add(self, rhs: $name) -> $name {
                $name(self.0 + rhs.0)
            }
        }

        impl AddAssign for $name {
            fn add_assign(&mut self, rhs: $name) {
                self.0 += rhs.0;
            }
        }

        impl Sub for $name {
            type Output = $name;
            fn sub(self, rhs: $name) -> $name {
                $name(self.0 - rhs.0)
            }
        }

        impl Neg for $name {
            type Output = $name;
            fn neg(self) -> $name {
                $name(-self.0)
            }
        }

        impl Mul<Scalar> for $name {
            type Output = $name;
            fn mul(self, rhs: Scalar) -> $name {
                $name(self.0 * rhs.0)
            }
        }

        impl fmt::Debug for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, concat!(stringify!($name), "({})"), self.to_hex())
            }
        }

        impl Serialize for $name {
            fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
                serializer.serialize_str(&self.to_hex())
            }
        }

        impl<'de> Deserialize<'de> for $name {
            fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
                let s = String::deserialize(deserializer)?;
                Self::from_hex(&s).map_err(serde::de::Error::custom)
            }
        }
    };
}

source_group!(
    G1Point,
    bls12_381::G1Projective,
    bls12_381::G1Affine,
    G1_BYTES,
    48,
    "Point in the first source group."
);

source_group!(
    G2Point,
    bls12_381::G2Projective,
    bls12_381::G2Affine,
    G2_BYTES,
    96,
    "Point in the second source group."
);

/// Element of the pairing target group.
#[derive(Clone, Copy, PartialEq, Eq)]
pub struct GtElement(pub(crate) bls12_381::Gt);

impl GtElement {
    /// Group identity.
    pub fn identity() -> Self {
        GtElement(bls12_381::Gt::identity())
    }

    /// Group operation (the "product of pairings").
    pub fn mul(&self, other: &GtElement) -> GtElement {
        GtElement(self.0 + other.0)
    }

    /// Exponentiation by a scalar.
    pub fn pow(&self, exp: &Scalar) -> GtElement {
        GtElement(self.0 * exp.0)
    }

    pub fn is_identity(&self) -> bool {
        self.0 == bls12_381::Gt::identity()
    }
}

impl fmt::Debug for GtElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            f.write_str("GtElement(identity)")
        } else {
            f.write_str("GtElement(..)")
        }
    }
}
