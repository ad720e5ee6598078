use zkquiz_chain::{append_transaction, Address, ContractState, Transaction};
use zkquiz_core::backend::Scalar;
use zkquiz_core::files::ProofFile;
use zkquiz_core::groth16::VerifyingKey;

use crate::{CliError, MintArgs};

/// Applies a mint to the chain state file. Returns the token id.
pub fn run(args: MintArgs) -> Result<u64, CliError> {
    let caller: Address = args
        .caller
        .parse()
        .map_err(|e| CliError::usage(format!("--caller: {e}")))?;
    let proof_file = ProofFile::load(&args.proof)?;

    let mut state = if args.deploy {
        if args.state.exists() {
            return Err(CliError::usage(format!(
                "{} already exists; --deploy refuses to overwrite it",
                args.state.display()
            )));
        }
        let vk_path = args
            .vk
            .as_ref()
            .ok_or_else(|| CliError::usage("--deploy requires --vk"))?;
        let commitment_hex = args
            .commitment
            .as_ref()
            .ok_or_else(|| CliError::usage("--deploy requires --commitment"))?;
        let verifying_key = VerifyingKey::load(vk_path)?;
        let commitment = Scalar::from_hex(commitment_hex)
            .map_err(|e| CliError::usage(format!("--commitment: {e}")))?;
        let deployed = ContractState::deploy(verifying_key, commitment)?;
        deployed.save(&args.state)?;
        deployed
    } else {
        ContractState::load(&args.state)?
    };

    let transaction = Transaction::Mint {
        caller,
        result: proof_file.result,
        proof: proof_file.proof,
    };
    if let Some(log) = &args.log {
        append_transaction(log, &transaction)?;
    }

    // a rejection leaves the saved state exactly as it was
    let receipt = state.mint(caller, proof_file.result, &proof_file.proof)?;
    state.save(&args.state)?;
    println!("minted token {} for {caller}", receipt.token_id);
    Ok(receipt.token_id)
}
