use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use ff::Field;
use rand::RngCore;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::BackendError;
use crate::constants::SCALAR_BYTES;

/// Element of the prime-order scalar field of the pairing groups.
///
/// Always canonical (`0 <= value < r`); all arithmetic is exact modular
/// arithmetic.
#[derive(Clone, Copy, PartialEq, Eq, Default)]
pub struct Scalar(pub(crate) bls12_381::Scalar);

impl Scalar {
    /// Additive identity.
    pub const ZERO: Scalar = Scalar(bls12_381::Scalar::zero());
    /// Multiplicative identity.
    pub const ONE: Scalar = Scalar(bls12_381::Scalar::one());

    /// Uniformly random field element from the supplied generator.
    /// Production callers pass an OS-backed rng; tests may seed one.
    pub fn random(rng: &mut impl RngCore) -> Self {
        Scalar(bls12_381::Scalar::random(rng))
    }

    /// Multiplicative inverse. Errors on zero.
    pub fn invert(&self) -> Result<Scalar, BackendError> {
        let inv = self.0.invert();
        if bool::from(inv.is_some()) {
            Ok(Scalar(inv.unwrap()))
        } else {
            Err(BackendError::ZeroInversion)
        }
    }

    /// Exponentiation by a small integer.
    pub fn pow(&self, exp: u64) -> Scalar {
        Scalar(self.0.pow(&[exp, 0, 0, 0]))
    }

    /// `self * self`.
    pub fn square(&self) -> Scalar {
        Scalar(self.0.square())
    }

    pub fn is_zero(&self) -> bool {
        self.0 == bls12_381::Scalar::zero()
    }

    /// Interprets up to 32 big-endian bytes as an integer and reduces it
    /// mod r. Accepts any length `<= 32`.
    pub fn from_bytes_reduced(bytes: &[u8]) -> Scalar {
        assert!(bytes.len() <= SCALAR_BYTES, "at most 32 bytes");
        let mut wide = [0u8; 64];
        // little-endian wide input: reversed bytes in the low limbs
        for (i, b) in bytes.iter().rev().enumerate() {
            wide[i] = *b;
        }
        Scalar(bls12_381::Scalar::from_bytes_wide(&wide))
    }

    /// Canonical 32-byte big-endian encoding.
    pub fn to_bytes(&self) -> [u8; SCALAR_BYTES] {
        let mut le = self.0.to_bytes();
        le.reverse();
        le
    }

    /// Parses a canonical 32-byte big-endian encoding; rejects values >= r.
    pub fn from_bytes(bytes: &[u8; SCALAR_BYTES]) -> Result<Scalar, BackendError> {
        let mut le = *bytes;
        le.reverse();
        let parsed = bls12_381::Scalar::from_bytes(&le);
        if bool::from(parsed.is_some()) {
            Ok(Scalar(parsed.unwrap()))
        } else {
            Err(BackendError::InvalidScalar)
        }
    }

    /// Lowercase hex with a `0x` prefix, the one text encoding used in
    /// JSON artifacts and APIs.
    pub fn to_hex(&self) -> String {
        format!("0x{}", hex::encode(self.to_bytes()))
    }

    /// Parses the `to_hex` encoding (0x optional, case-insensitive).
    pub fn from_hex(s: &str) -> Result<Scalar, BackendError> {
        let digits = s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")).unwrap_or(s);
        if digits.len() != 2 * SCALAR_BYTES {
            return Err(BackendError::InvalidScalar);
        }
        let raw = hex::decode(digits).map_err(|_| BackendError::InvalidScalar)?;
        let mut bytes = [0u8; SCALAR_BYTES];
        bytes.copy_from_slice(&raw);
        Scalar::from_bytes(&bytes)
    }
}

impl From<u64> for Scalar {
    fn from(v: u64) -> Self {
        Scalar(bls12_381::Scalar::from(v))
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        Scalar(self.0 + rhs.0)
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        Scalar(self.0 - rhs.0)
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        Scalar(self.0 * rhs.0)
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar(-self.0)
    }
}

impl AddAssign for Scalar {
    fn add_assign(&mut self, rhs: Scalar) {
        self.0 += rhs.0;
    }
}

impl SubAssign for Scalar {
    fn sub_assign(&mut self, rhs: Scalar) {
        self.0 -= rhs.0;
    }
}

impl MulAssign for Scalar {
    fn mul_assign(&mut self, rhs: Scalar) {
        self.0 *= rhs.0;
    }
}

impl Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::ZERO, |acc, x| acc + x)
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Scalar({})", self.to_hex())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

impl FromStr for Scalar {
    type Err = BackendError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Scalar::from_hex(s)
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_hex())
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        Scalar::from_hex(&s).map_err(serde::de::Error::custom)
    }
}
