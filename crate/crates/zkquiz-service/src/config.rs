use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::ServiceError;

fn default_max_concurrent_proofs() -> usize {
    2
}

fn default_request_size_limit() -> usize {
    64 * 1024
}

/// Service configuration, loaded from a JSON file. Environment variables
/// override individual fields (`ZKQUIZ_LISTEN`, `ZKQUIZ_SECRET_KEY_FILE`,
/// `ZKQUIZ_PROVING_KEY_FILE`, `ZKQUIZ_VERIFYING_KEY_FILE`,
/// `ZKQUIZ_PUBLIC_PARAMS_FILE`, `ZKQUIZ_MAX_CONCURRENT_PROOFS`,
/// `ZKQUIZ_REQUEST_SIZE_LIMIT`).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ServiceConfig {
    /// Bind address, e.g. `127.0.0.1:8080`.
    pub listen: String,
    pub secret_key_file: PathBuf,
    pub proving_key_file: PathBuf,
    pub verifying_key_file: PathBuf,
    pub public_params_file: PathBuf,
    /// Proofs allowed in flight; further requests get `503 busy`.
    #[serde(default = "default_max_concurrent_proofs")]
    pub max_concurrent_proofs: usize,
    /// Request body cap in bytes.
    #[serde(default = "default_request_size_limit")]
    pub request_size_limit: usize,
}

impl ServiceConfig {
    /// Reads the config file and applies environment overrides.
    pub fn load(path: &Path) -> Result<Self, ServiceError> {
        let raw = fs::read(path)
            .map_err(|e| ServiceError::Config(format!("read {}: {e}", path.display())))?;
        let mut config: ServiceConfig = serde_json::from_slice(&raw)
            .map_err(|e| ServiceError::Config(format!("parse {}: {e}", path.display())))?;
        config.apply_env()?;
        Ok(config)
    }

    /// Applies `ZKQUIZ_*` environment overrides.
    pub fn apply_env(&mut self) -> Result<(), ServiceError> {
        if let Ok(listen) = std::env::var("ZKQUIZ_LISTEN") {
            self.listen = listen;
        }
        for (var, field) in [
            ("ZKQUIZ_SECRET_KEY_FILE", &mut self.secret_key_file),
            ("ZKQUIZ_PROVING_KEY_FILE", &mut self.proving_key_file),
            ("ZKQUIZ_VERIFYING_KEY_FILE", &mut self.verifying_key_file),
            ("ZKQUIZ_PUBLIC_PARAMS_FILE", &mut self.public_params_file),
        ] {
            if let Ok(value) = std::env::var(var) {
                *field = PathBuf::from(value);
            }
        }
        if let Ok(value) = std::env::var("ZKQUIZ_MAX_CONCURRENT_PROOFS") {
            self.max_concurrent_proofs = value
                .parse()
                .map_err(|e| ServiceError::Config(format!("ZKQUIZ_MAX_CONCURRENT_PROOFS: {e}")))?;
        }
        if let Ok(value) = std::env::var("ZKQUIZ_REQUEST_SIZE_LIMIT") {
            self.request_size_limit = value
                .parse()
                .map_err(|e| ServiceError::Config(format!("ZKQUIZ_REQUEST_SIZE_LIMIT: {e}")))?;
        }
        Ok(())
    }
}
