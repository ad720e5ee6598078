use std::fs::{self, OpenOptions};
use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use zkquiz_core::backend::Scalar;
use zkquiz_core::circuit::Address;
use zkquiz_core::groth16::{Proof, VerifyingKey};

use crate::state::{ChainError, ContractState, TxOutcome};

/// One logged transaction. The log plays the blockchain's role of a
/// durable ordered history: replaying it against the deploy parameters
/// reproduces the exact state.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
#[allow(clippy::large_enum_variant)]
pub enum Transaction {
    Mint {
        caller: Address,
        result: u8,
        proof: Proof,
    },
    Transfer {
        from: Address,
        to: Address,
        token_id: u64,
    },
}

/// Appends one transaction as a JSON line.
pub fn append_transaction(path: &Path, transaction: &Transaction) -> Result<(), ChainError> {
    let mut line = serde_json::to_vec(transaction).expect("transaction serializes");
    line.push(b'\n');
    let mut file = OpenOptions::new().create(true).append(true).open(path)?;
    file.write_all(&line)?;
    file.sync_all()?;
    Ok(())
}

/// Reads a JSON-lines transaction log in order. Blank lines are skipped.
pub fn read_transactions(path: &Path) -> Result<Vec<Transaction>, ChainError> {
    let raw = fs::read_to_string(path)?;
    raw.lines()
        .filter(|line| !line.trim().is_empty())
        .map(|line| {
            serde_json::from_str(line).map_err(|e| ChainError::Corrupt(format!("tx log: {e}")))
        })
        .collect()
}

/// Re-executes a recorded transaction sequence against fresh deploy
/// parameters. Rejected transactions are no-ops, exactly as they were
/// live.
pub fn replay(
    verifying_key: VerifyingKey,
    commitment: Scalar,
    transactions: &[Transaction],
) -> Result<(ContractState, Vec<TxOutcome>), ChainError> {
    let mut state = ContractState::deploy(verifying_key, commitment)?;
    let outcomes = transactions
        .iter()
        .map(|tx| state.apply(tx))
        .collect();
    Ok((state, outcomes))
}
