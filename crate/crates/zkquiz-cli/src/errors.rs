use std::fmt;

use zkquiz_chain::{ChainError, Rejection};
use zkquiz_core::circuit::CircuitError;
use zkquiz_core::files::FileError;
use zkquiz_core::groth16::Groth16Error;

/// Command failures, each with a stable exit code.
#[derive(Debug)]
pub enum CliError {
    /// Bad flags, unreadable files, broken config — exit 2.
    Usage(String),
    /// The proving service rejected the request — exit 3.
    Service { code: String, message: String },
    /// Proof failed verification or was rejected by the contract — exit 4.
    InvalidProof,
    /// The caller already holds a token — exit 5.
    AlreadyMinted,
    /// Result code outside 0..=3 — exit 6.
    ResultOutOfRange,
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Service { .. } => 3,
            CliError::InvalidProof => 4,
            CliError::AlreadyMinted => 5,
            CliError::ResultOutOfRange => 6,
        }
    }

    pub fn usage(message: impl fmt::Display) -> Self {
        CliError::Usage(message.to_string())
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(message) => write!(f, "{message}"),
            CliError::Service { code, message } => write!(f, "{code}: {message}"),
            CliError::InvalidProof => write!(f, "invalid_proof"),
            CliError::AlreadyMinted => write!(f, "already_minted"),
            CliError::ResultOutOfRange => write!(f, "result_out_of_range"),
        }
    }
}

impl From<Rejection> for CliError {
    fn from(rejection: Rejection) -> Self {
        match rejection {
            Rejection::InvalidProof | Rejection::Soulbound => CliError::InvalidProof,
            Rejection::AlreadyMinted => CliError::AlreadyMinted,
            Rejection::ResultOutOfRange => CliError::ResultOutOfRange,
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::usage(e)
    }
}

impl From<FileError> for CliError {
    fn from(e: FileError) -> Self {
        CliError::usage(e)
    }
}

impl From<Groth16Error> for CliError {
    fn from(e: Groth16Error) -> Self {
        CliError::usage(e)
    }
}

impl From<ChainError> for CliError {
    fn from(e: ChainError) -> Self {
        CliError::usage(e)
    }
}

impl From<CircuitError> for CliError {
    fn from(e: CircuitError) -> Self {
        CliError::usage(e)
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::usage(e)
    }
}
