use zkquiz_chain::{Address, ContractState};

use crate::{CliError, ShowArgs};

pub fn run(args: ShowArgs) -> Result<(), CliError> {
    let state = ContractState::load(&args.state)?;

    if let Some(owner) = &args.owner {
        let owner: Address = owner
            .parse()
            .map_err(|e| CliError::usage(format!("--owner: {e}")))?;
        match state.token_of(&owner) {
            Some(record) => {
                println!(
                    "token {} owner {} result {} minted_at {}",
                    record.token_id, record.owner, record.result, record.minted_at
                );
            }
            None => println!("no token for {owner}"),
        }
        return Ok(());
    }

    println!("commitment: {}", state.commitment().to_hex());
    println!("transactions: {}", state.tx_count());
    if state.total_supply() == 0 {
        println!("0 tokens");
        return Ok(());
    }
    println!("{} tokens", state.total_supply());
    println!("{:<8} {:<44} {:<7} minted_at", "token", "owner", "result");
    for record in state.registry() {
        println!(
            "{:<8} {:<44} {:<7} {}",
            record.token_id,
            record.owner.to_string(),
            record.result,
            record.minted_at
        );
    }
    Ok(())
}
