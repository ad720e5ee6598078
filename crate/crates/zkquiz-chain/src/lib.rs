//! Deterministic simulated smart contract.
//!
//! The contract verifies a Groth16 proof as the required check before
//! minting a soulbound token that attests a questionnaire result. It is a
//! state machine over a JSON state file plus a JSON-lines transaction
//! log: identical deploy parameters and transaction sequences reproduce
//! byte-identical state files, and rejected transactions leave the state
//! untouched.
//!
//! Rules enforced:
//! - a token is minted only when the proof verifies against
//!   `(result, commitment, caller)` — the caller address is a public
//!   input, so a proof issued for one recipient is useless to anyone
//!   else;
//! - at most one token per address, ever;
//! - transfers are rejected unconditionally.

mod state;
mod txlog;

pub use state::{ChainError, ContractState, Rejection, TokenRecord, TxOutcome, TxReceipt};
pub use txlog::{append_transaction, read_transactions, replay, Transaction};

pub use zkquiz_core::circuit::Address;
