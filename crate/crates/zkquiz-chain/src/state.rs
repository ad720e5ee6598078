use std::fmt;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use zkquiz_core::backend::Scalar;
use zkquiz_core::circuit::{Address, QuizCircuit, ResultCode};
use zkquiz_core::files::write_atomic;
use zkquiz_core::groth16::{verify, Groth16Error, Proof, VerifyingKey};

use crate::txlog::Transaction;

/// Hard failures of the simulator itself (not transaction rejections).
#[derive(Debug, Error)]
pub enum ChainError {
    /// Deploy with a verifying key for some other circuit.
    #[error("verifying key was not generated for the questionnaire circuit")]
    WrongCircuit,
    /// State file failed its integrity checksum.
    #[error("state file checksum mismatch (corrupt or truncated file)")]
    ChecksumMismatch,
    /// State file was not parseable.
    #[error("corrupt state file: {0}")]
    Corrupt(String),
    /// State file written by an unsupported schema.
    #[error("unsupported state schema version {0}")]
    SchemaVersion(u32),
    #[error(transparent)]
    Groth16(#[from] Groth16Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Why a transaction was rejected. Rejections are receipts, not crashes:
/// the state is unchanged and the caller gets a code.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Rejection {
    /// The proof did not verify for `(result, commitment, caller)`.
    InvalidProof,
    /// The caller already holds a token.
    AlreadyMinted,
    /// The claimed result is outside `0..=3`.
    ResultOutOfRange,
    /// Transfers are always rejected.
    Soulbound,
}

impl Rejection {
    pub fn code(&self) -> &'static str {
        match self {
            Rejection::InvalidProof => "invalid_proof",
            Rejection::AlreadyMinted => "already_minted",
            Rejection::ResultOutOfRange => "result_out_of_range",
            Rejection::Soulbound => "soulbound",
        }
    }
}

impl fmt::Display for Rejection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

/// One minted token. Records are append-only and never mutated.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TokenRecord {
    /// Monotonically increasing from 1.
    pub token_id: u64,
    pub owner: Address,
    /// Result code 0..=3.
    pub result: u8,
    /// Sequence number of the accepting transaction.
    pub minted_at: u64,
}

/// Receipt for an accepted mint.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TxReceipt {
    pub token_id: u64,
    /// Sequence number assigned to the transaction.
    pub sequence: u64,
}

/// Outcome of applying one logged transaction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TxOutcome {
    Minted(TxReceipt),
    Rejected(Rejection),
}

/// The simulated contract: verification parameters pinned at deployment
/// plus the soulbound token registry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContractState {
    commitment: Scalar,
    verifying_key: VerifyingKey,
    registry: Vec<TokenRecord>,
    next_token_id: u64,
    tx_count: u64,
}

const STATE_SCHEMA_VERSION: u32 = 1;

// serialized form; `checksum` covers the serialization of everything
// else with the checksum field left empty
#[derive(Serialize, Deserialize)]
struct StateFile {
    schema_version: u32,
    commitment: Scalar,
    verifying_key_digest: String,
    verifying_key: String,
    registry: Vec<TokenRecord>,
    next_token_id: u64,
    tx_count: u64,
    checksum: String,
}

impl ContractState {
    /// Deploys the contract: pins the key commitment and the verifying
    /// key, which must have been generated for the questionnaire circuit.
    pub fn deploy(verifying_key: VerifyingKey, commitment: Scalar) -> Result<Self, ChainError> {
        verifying_key
            .ensure_circuit(&QuizCircuit::standard().digest())
            .map_err(|_| ChainError::WrongCircuit)?;
        Ok(ContractState {
            commitment,
            verifying_key,
            registry: Vec::new(),
            next_token_id: 1,
            tx_count: 0,
        })
    }

    pub fn commitment(&self) -> Scalar {
        self.commitment
    }

    pub fn verifying_key(&self) -> &VerifyingKey {
        &self.verifying_key
    }

    /// Transactions accepted so far.
    pub fn tx_count(&self) -> u64 {
        self.tx_count
    }

    /// Mints a token for `caller` iff the result is in range, the caller
    /// holds no token yet, and the proof verifies against
    /// `(result, commitment, caller)`. Rejection leaves the state
    /// untouched.
    pub fn mint(
        &mut self,
        caller: Address,
        result: u8,
        proof: &Proof,
    ) -> Result<TxReceipt, Rejection> {
        let result_code = ResultCode::new(result).map_err(|_| Rejection::ResultOutOfRange)?;
        if self.token_of(&caller).is_some() {
            return Err(Rejection::AlreadyMinted);
        }
        let public_inputs = [
            result_code.to_scalar(),
            self.commitment,
            caller.to_scalar(),
        ];
        match verify(&self.verifying_key, &public_inputs, proof) {
            Ok(true) => {}
            _ => return Err(Rejection::InvalidProof),
        }

        self.tx_count += 1;
        let receipt = TxReceipt {
            token_id: self.next_token_id,
            sequence: self.tx_count,
        };
        self.registry.push(TokenRecord {
            token_id: receipt.token_id,
            owner: caller,
            result,
            minted_at: receipt.sequence,
        });
        self.next_token_id += 1;
        Ok(receipt)
    }

    /// Soulbound: every transfer is rejected, including transfers of
    /// tokens that do not exist.
    pub fn transfer(&mut self, _from: Address, _to: Address, _token_id: u64) -> Rejection {
        Rejection::Soulbound
    }

    /// The token owned by `owner`, if any.
    pub fn token_of(&self, owner: &Address) -> Option<&TokenRecord> {
        self.registry.iter().find(|record| record.owner == *owner)
    }

    pub fn total_supply(&self) -> usize {
        self.registry.len()
    }

    /// Registry records, sorted by token id.
    pub fn registry(&self) -> &[TokenRecord] {
        &self.registry
    }

    /// Applies one logged transaction, turning rejections into outcomes.
    pub fn apply(&mut self, transaction: &Transaction) -> TxOutcome {
        match transaction {
            Transaction::Mint {
                caller,
                result,
                proof,
            } => match self.mint(*caller, *result, proof) {
                Ok(receipt) => TxOutcome::Minted(receipt),
                Err(rejection) => TxOutcome::Rejected(rejection),
            },
            Transaction::Transfer {
                from,
                to,
                token_id,
            } => TxOutcome::Rejected(self.transfer(*from, *to, *token_id)),
        }
    }

    fn to_file(&self) -> StateFile {
        StateFile {
            schema_version: STATE_SCHEMA_VERSION,
            commitment: self.commitment,
            verifying_key_digest: hex::encode(self.verifying_key.digest()),
            verifying_key: hex::encode(self.verifying_key.to_bytes()),
            registry: self.registry.clone(),
            next_token_id: self.next_token_id,
            tx_count: self.tx_count,
            checksum: String::new(),
        }
    }

    /// Serialized state with the integrity checksum filled in. Two equal
    /// states produce identical bytes.
    pub fn to_canonical_bytes(&self) -> Vec<u8> {
        let mut file = self.to_file();
        let body = serde_json::to_vec(&file).expect("state serializes");
        file.checksum = hex::encode(Sha256::digest(&body));
        serde_json::to_vec(&file).expect("state serializes")
    }

    /// Writes the state atomically.
    pub fn save(&self, path: &Path) -> Result<(), ChainError> {
        write_atomic(path, &self.to_canonical_bytes(), None)?;
        Ok(())
    }

    /// Loads and verifies a state file: checksum first, then the
    /// verifying key's own digest, then the circuit pin.
    pub fn load(path: &Path) -> Result<Self, ChainError> {
        let raw = fs::read(path)?;
        let file: StateFile =
            serde_json::from_slice(&raw).map_err(|e| ChainError::Corrupt(e.to_string()))?;
        if file.schema_version != STATE_SCHEMA_VERSION {
            return Err(ChainError::SchemaVersion(file.schema_version));
        }

        let expected = file.checksum.clone();
        let mut body_file = file;
        body_file.checksum = String::new();
        let body = serde_json::to_vec(&body_file).expect("state serializes");
        if hex::encode(Sha256::digest(&body)) != expected {
            return Err(ChainError::ChecksumMismatch);
        }

        let vk_bytes = hex::decode(&body_file.verifying_key)
            .map_err(|e| ChainError::Corrupt(format!("verifying key hex: {e}")))?;
        let verifying_key = VerifyingKey::from_bytes(&vk_bytes)?;
        if hex::encode(verifying_key.digest()) != body_file.verifying_key_digest {
            return Err(ChainError::Corrupt(
                "verifying key digest does not match key bytes".into(),
            ));
        }
        verifying_key
            .ensure_circuit(&QuizCircuit::standard().digest())
            .map_err(|_| ChainError::WrongCircuit)?;

        Ok(ContractState {
            commitment: body_file.commitment,
            verifying_key,
            registry: body_file.registry,
            next_token_id: body_file.next_token_id,
            tx_count: body_file.tx_count,
        })
    }
}
