//! JSON artifact schemas and atomic file helpers shared by the CLI and
//! the proving service.
//!
//! Every writer goes through [`write_atomic`] (temp file + rename), so a
//! crashed run never leaves a partial artifact behind.

use std::fs;
use std::io;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::backend::Scalar;
use crate::circuit::{AnswerKey, AnswerVector, CircuitError};
use crate::constants::{GROUP_SIZE, QUESTION_COUNT, SCHEMA_VERSION};
use crate::groth16::Proof;
use crate::mimc::MimcParams;

/// Errors from reading or writing JSON artifacts.
#[derive(Debug, Error)]
pub enum FileError {
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error("malformed file: {0}")]
    Malformed(String),
    #[error("unsupported schema version {0}")]
    SchemaVersion(u32),
    #[error("secret key file is readable by other users; refusing to use it")]
    InsecurePermissions,
    #[error("hash parameter digest mismatch: file was produced by an incompatible build")]
    ParamsDigestMismatch,
    #[error(transparent)]
    Circuit(#[from] CircuitError),
}

/// Writes `bytes` to `path` atomically (temp file in the same directory,
/// then rename). `mode` overrides the permissions before any content is
/// written, so secrets never hit disk world-readable.
pub fn write_atomic(path: &Path, bytes: &[u8], mode: Option<u32>) -> io::Result<()> {
    let dir = path.parent().filter(|p| !p.as_os_str().is_empty());
    let mut tmp = match dir {
        Some(dir) => tempfile::NamedTempFile::new_in(dir)?,
        None => tempfile::NamedTempFile::new_in(".")?,
    };
    #[cfg(unix)]
    if let Some(mode) = mode {
        use std::os::unix::fs::PermissionsExt;
        fs::set_permissions(tmp.path(), fs::Permissions::from_mode(mode))?;
    }
    #[cfg(not(unix))]
    let _ = mode;
    io::Write::write_all(&mut tmp, bytes)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

/// On-disk form of the secret answer key.
#[derive(Serialize, Deserialize)]
pub struct SecretKeyFile {
    pub schema_version: u32,
    /// Ten 0/1 entries, index = question number.
    pub key_bits: Vec<u8>,
    /// Nonzero commitment blind.
    pub blind: Scalar,
    /// Hex SHA-256 of the hash parameters this key was generated under.
    pub mimc_params_digest: String,
}

impl SecretKeyFile {
    pub fn from_key(key: &AnswerKey, params: &MimcParams) -> Self {
        SecretKeyFile {
            schema_version: SCHEMA_VERSION,
            key_bits: key.bits().bits().to_vec(),
            blind: key.blind(),
            mimc_params_digest: hex::encode(params.digest()),
        }
    }

    /// Writes with owner-only permissions.
    pub fn save(&self, path: &Path) -> Result<(), FileError> {
        let json = serde_json::to_vec_pretty(self).expect("schema serializes");
        write_atomic(path, &json, Some(0o600))?;
        Ok(())
    }

    /// Loads and fully validates: permissions, schema version, parameter
    /// digest, bit values, nonzero blind.
    pub fn load(path: &Path, params: &MimcParams) -> Result<AnswerKey, FileError> {
        #[cfg(unix)]
        {
            use std::os::unix::fs::PermissionsExt;
            let mode = fs::metadata(path)?.permissions().mode();
            if mode & 0o044 != 0 {
                return Err(FileError::InsecurePermissions);
            }
        }
        let raw = fs::read(path)?;
        let file: SecretKeyFile =
            serde_json::from_slice(&raw).map_err(|e| FileError::Malformed(e.to_string()))?;
        if file.schema_version != SCHEMA_VERSION {
            return Err(FileError::SchemaVersion(file.schema_version));
        }
        if file.mimc_params_digest != hex::encode(params.digest()) {
            return Err(FileError::ParamsDigestMismatch);
        }
        let bits = AnswerVector::from_bits(&file.key_bits)?;
        Ok(AnswerKey::new(bits, file.blind)?)
    }
}

/// Public parameters published next to the verifying key.
#[derive(Serialize, Deserialize, Clone, PartialEq, Eq, Debug)]
pub struct PublicParamsFile {
    pub schema_version: u32,
    /// The answer-key commitment the contract pins at deployment.
    pub commitment: Scalar,
    /// Hex SHA-256 of the canonical verifying-key bytes.
    pub verifying_key_digest: String,
    pub question_count: usize,
    /// Group index per question.
    pub group_spec: Vec<u8>,
    /// Matches required for an attribute bit.
    pub threshold: u32,
}

impl PublicParamsFile {
    pub fn new(commitment: Scalar, verifying_key_digest: [u8; 32]) -> Self {
        PublicParamsFile {
            schema_version: SCHEMA_VERSION,
            commitment,
            verifying_key_digest: hex::encode(verifying_key_digest),
            question_count: QUESTION_COUNT,
            group_spec: (0..QUESTION_COUNT).map(|i| (i / GROUP_SIZE) as u8).collect(),
            threshold: crate::constants::GROUP_THRESHOLD,
        }
    }

    pub fn save(&self, path: &Path) -> Result<(), FileError> {
        let json = serde_json::to_vec_pretty(self).expect("schema serializes");
        write_atomic(path, &json, None)?;
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Self, FileError> {
        let raw = fs::read(path)?;
        let file: PublicParamsFile =
            serde_json::from_slice(&raw).map_err(|e| FileError::Malformed(e.to_string()))?;
        if file.schema_version != SCHEMA_VERSION {
            return Err(FileError::SchemaVersion(file.schema_version));
        }
        Ok(file)
    }
}

/// Self-contained proof artifact: the statement's public inputs travel
/// with the proof so offline verification and minting need no
/// recomputation.
#[derive(Serialize, Deserialize, Clone, PartialEq, Eq, Debug)]
pub struct ProofFile {
    pub schema_version: u32,
    /// Result code 0..=3.
    pub result: u8,
    pub proof: Proof,
    /// Public inputs in verifier order: result, commitment, recipient.
    pub public_inputs: Vec<Scalar>,
}

impl ProofFile {
    pub fn save(&self, path: &Path) -> Result<(), FileError> {
        let json = serde_json::to_vec_pretty(self).expect("schema serializes");
        write_atomic(path, &json, None)?;
        Ok(())
    }

    pub fn load(path: &Path) -> Result<Self, FileError> {
        let raw = fs::read(path)?;
        let file: ProofFile =
            serde_json::from_slice(&raw).map_err(|e| FileError::Malformed(e.to_string()))?;
        if file.schema_version != SCHEMA_VERSION {
            return Err(FileError::SchemaVersion(file.schema_version));
        }
        Ok(file)
    }
}
