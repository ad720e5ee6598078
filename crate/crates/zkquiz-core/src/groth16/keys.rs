//! Proof-system key material and its binary file formats.
//!
//! Both key files start with a magic tag, a format version, and the
//! SHA-256 digest of the canonical R1CS serialization they were generated
//! for. Loaders must check that digest against the expected circuit
//! before trusting a key.

use std::fs;
use std::io::{self, Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::backend::{G1Point, G2Point};
use crate::constants::{FORMAT_VERSION, PROVING_KEY_MAGIC, VERIFYING_KEY_MAGIC};
use crate::files::write_atomic;

use super::Groth16Error;

/// Prover half of the common reference string.
#[derive(Clone, Debug)]
pub struct ProvingKey {
    pub alpha_g1: G1Point,
    pub beta_g1: G1Point,
    pub beta_g2: G2Point,
    pub delta_g1: G1Point,
    pub delta_g2: G2Point,
    /// Powers of tau in G1: `tau^i` for `i in 0..n`.
    pub tau_g1: Vec<G1Point>,
    /// Powers of tau in G2.
    pub tau_g2: Vec<G2Point>,
    /// Per-wire `u_i(tau)` in G1.
    pub a_query: Vec<G1Point>,
    /// Per-wire `v_i(tau)` in G1.
    pub b_g1_query: Vec<G1Point>,
    /// Per-wire `v_i(tau)` in G2.
    pub b_g2_query: Vec<G2Point>,
    /// Private-wire `(beta u_i + alpha v_i + w_i)(tau) / delta` in G1.
    pub l_query: Vec<G1Point>,
    /// `tau^i t(tau) / delta` for `i in 0..n-1` in G1.
    pub h_query: Vec<G1Point>,
    /// Digest of the circuit this key was generated for.
    pub circuit_digest: [u8; 32],
}

/// Verifier half of the common reference string.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyingKey {
    pub alpha_g1: G1Point,
    pub beta_g2: G2Point,
    pub gamma_g2: G2Point,
    pub delta_g2: G2Point,
    /// Per-public-wire `(beta u_i + alpha v_i + w_i)(tau) / gamma` in G1,
    /// including the constant wire at index 0.
    pub ic: Vec<G1Point>,
    /// Digest of the circuit this key was generated for.
    pub circuit_digest: [u8; 32],
}

/// The proof triple. Constant size regardless of circuit size.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Proof {
    pub a: G1Point,
    pub b: G2Point,
    pub c: G1Point,
}

impl Proof {
    /// Concatenated point encodings: A, B, C.
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(G1Point::SERIALIZED_LEN * 2 + G2Point::SERIALIZED_LEN);
        out.extend_from_slice(&self.a.to_bytes());
        out.extend_from_slice(&self.b.to_bytes());
        out.extend_from_slice(&self.c.to_bytes());
        out
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self, Groth16Error> {
        let expected = G1Point::SERIALIZED_LEN * 2 + G2Point::SERIALIZED_LEN;
        if bytes.len() != expected {
            return Err(Groth16Error::InvalidKeyFile(format!(
                "proof must be {expected} bytes, got {}",
                bytes.len()
            )));
        }
        let (a, rest) = bytes.split_at(G1Point::SERIALIZED_LEN);
        let (b, c) = rest.split_at(G2Point::SERIALIZED_LEN);
        Ok(Proof {
            a: G1Point::from_bytes(a)?,
            b: G2Point::from_bytes(b)?,
            c: G1Point::from_bytes(c)?,
        })
    }
}

fn write_u32(out: &mut impl Write, value: u32) -> io::Result<()> {
    out.write_all(&value.to_be_bytes())
}

fn read_u32(input: &mut impl Read) -> io::Result<u32> {
    let mut buf = [0u8; 4];
    input.read_exact(&mut buf)?;
    Ok(u32::from_be_bytes(buf))
}

fn write_g1(out: &mut impl Write, point: &G1Point) -> io::Result<()> {
    out.write_all(&point.to_bytes())
}

fn write_g2(out: &mut impl Write, point: &G2Point) -> io::Result<()> {
    out.write_all(&point.to_bytes())
}

fn read_g1(input: &mut impl Read) -> Result<G1Point, Groth16Error> {
    let mut buf = [0u8; G1Point::SERIALIZED_LEN];
    input.read_exact(&mut buf)?;
    Ok(G1Point::from_bytes(&buf)?)
}

fn read_g2(input: &mut impl Read) -> Result<G2Point, Groth16Error> {
    let mut buf = [0u8; G2Point::SERIALIZED_LEN];
    input.read_exact(&mut buf)?;
    Ok(G2Point::from_bytes(&buf)?)
}

fn write_g1_vec(out: &mut impl Write, points: &[G1Point]) -> io::Result<()> {
    write_u32(out, points.len() as u32)?;
    for p in points {
        write_g1(out, p)?;
    }
    Ok(())
}

fn write_g2_vec(out: &mut impl Write, points: &[G2Point]) -> io::Result<()> {
    write_u32(out, points.len() as u32)?;
    for p in points {
        write_g2(out, p)?;
    }
    Ok(())
}

// key files top out around a megabyte; cap reads defensively anyway
const MAX_POINTS: u32 = 1 << 22;

fn read_g1_vec(input: &mut impl Read) -> Result<Vec<G1Point>, Groth16Error> {
    let len = read_u32(input)?;
    if len > MAX_POINTS {
        return Err(Groth16Error::InvalidKeyFile("point count too large".into()));
    }
    (0..len).map(|_| read_g1(input)).collect()
}

fn read_g2_vec(input: &mut impl Read) -> Result<Vec<G2Point>, Groth16Error> {
    let len = read_u32(input)?;
    if len > MAX_POINTS {
        return Err(Groth16Error::InvalidKeyFile("point count too large".into()));
    }
    (0..len).map(|_| read_g2(input)).collect()
}

fn read_header(
    input: &mut impl Read,
    magic: &[u8; 4],
) -> Result<[u8; 32], Groth16Error> {
    let mut got_magic = [0u8; 4];
    input.read_exact(&mut got_magic)?;
    if &got_magic != magic {
        return Err(Groth16Error::InvalidKeyFile(format!(
            "bad magic {:?}, expected {:?}",
            got_magic, magic
        )));
    }
    let version = read_u32(input)?;
    if version != FORMAT_VERSION {
        return Err(Groth16Error::InvalidKeyFile(format!(
            "unsupported format version {version}"
        )));
    }
    let mut digest = [0u8; 32];
    input.read_exact(&mut digest)?;
    Ok(digest)
}

impl ProvingKey {
    pub fn write_to(&self, out: &mut impl Write) -> io::Result<()> {
        out.write_all(PROVING_KEY_MAGIC)?;
        write_u32(out, FORMAT_VERSION)?;
        out.write_all(&self.circuit_digest)?;
        write_g1(out, &self.alpha_g1)?;
        write_g1(out, &self.beta_g1)?;
        write_g2(out, &self.beta_g2)?;
        write_g1(out, &self.delta_g1)?;
        write_g2(out, &self.delta_g2)?;
        write_g1_vec(out, &self.tau_g1)?;
        write_g2_vec(out, &self.tau_g2)?;
        write_g1_vec(out, &self.a_query)?;
        write_g1_vec(out, &self.b_g1_query)?;
        write_g2_vec(out, &self.b_g2_query)?;
        write_g1_vec(out, &self.l_query)?;
        write_g1_vec(out, &self.h_query)?;
        Ok(())
    }

    pub fn read_from(input: &mut impl Read) -> Result<Self, Groth16Error> {
        let circuit_digest = read_header(input, PROVING_KEY_MAGIC)?;
        Ok(ProvingKey {
            circuit_digest,
            alpha_g1: read_g1(input)?,
            beta_g1: read_g1(input)?,
            beta_g2: read_g2(input)?,
            delta_g1: read_g1(input)?,
            delta_g2: read_g2(input)?,
            tau_g1: read_g1_vec(input)?,
            tau_g2: read_g2_vec(input)?,
            a_query: read_g1_vec(input)?,
            b_g1_query: read_g1_vec(input)?,
            b_g2_query: read_g2_vec(input)?,
            l_query: read_g1_vec(input)?,
            h_query: read_g1_vec(input)?,
        })
    }

    pub fn save(&self, path: &Path) -> Result<(), Groth16Error> {
        let mut bytes = Vec::new();
        self.write_to(&mut bytes)?;
        write_atomic(path, &bytes, None)?;
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Self, Groth16Error> {
        let bytes = fs::read(path)?;
        let mut cursor = bytes.as_slice();
        let key = Self::read_from(&mut cursor)?;
        if !cursor.is_empty() {
            return Err(Groth16Error::InvalidKeyFile("trailing bytes".into()));
        }
        Ok(key)
    }

    /// Fails unless this key was generated for the expected circuit.
    pub fn ensure_circuit(&self, expected: &[u8; 32]) -> Result<(), Groth16Error> {
        if &self.circuit_digest != expected {
            return Err(Groth16Error::CircuitDigestMismatch);
        }
        Ok(())
    }
}

impl VerifyingKey {
    /// Canonical byte serialization (identical to the file content).
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::new();
        self.write_to(&mut out).expect("vec write cannot fail");
        out
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self, Groth16Error> {
        let mut cursor = bytes;
        let key = Self::read_from(&mut cursor)?;
        if !cursor.is_empty() {
            return Err(Groth16Error::InvalidKeyFile("trailing bytes".into()));
        }
        Ok(key)
    }

    pub fn write_to(&self, out: &mut impl Write) -> io::Result<()> {
        out.write_all(VERIFYING_KEY_MAGIC)?;
        write_u32(out, FORMAT_VERSION)?;
        out.write_all(&self.circuit_digest)?;
        write_g1(out, &self.alpha_g1)?;
        write_g2(out, &self.beta_g2)?;
        write_g2(out, &self.gamma_g2)?;
        write_g2(out, &self.delta_g2)?;
        write_g1_vec(out, &self.ic)
    }

    pub fn read_from(input: &mut impl Read) -> Result<Self, Groth16Error> {
        let circuit_digest = read_header(input, VERIFYING_KEY_MAGIC)?;
        Ok(VerifyingKey {
            circuit_digest,
            alpha_g1: read_g1(input)?,
            beta_g2: read_g2(input)?,
            gamma_g2: read_g2(input)?,
            delta_g2: read_g2(input)?,
            ic: read_g1_vec(input)?,
        })
    }

    pub fn save(&self, path: &Path) -> Result<(), Groth16Error> {
        write_atomic(path, &self.to_bytes(), None)?;
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Self, Groth16Error> {
        Self::from_bytes(&fs::read(path)?)
    }

    /// SHA-256 of the canonical bytes; published in params files and
    /// pinned by the simulated contract.
    pub fn digest(&self) -> [u8; 32] {
        Sha256::digest(self.to_bytes()).into()
    }

    /// Fails unless this key was generated for the expected circuit.
    pub fn ensure_circuit(&self, expected: &[u8; 32]) -> Result<(), Groth16Error> {
        if &self.circuit_digest != expected {
            return Err(Groth16Error::CircuitDigestMismatch);
        }
        Ok(())
    }
}
