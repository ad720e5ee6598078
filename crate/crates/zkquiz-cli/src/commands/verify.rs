use zkquiz_core::circuit::QuizCircuit;
use zkquiz_core::files::{FileError, ProofFile};
use zkquiz_core::groth16::{verify, VerifyingKey};

use crate::{CliError, VerifyArgs};

pub fn run(args: VerifyArgs) -> Result<(), CliError> {
    let verifying_key = VerifyingKey::load(&args.vk)?;
    verifying_key.ensure_circuit(&QuizCircuit::standard().digest())?;

    // a proof file that does not even decode is an invalid proof, the
    // same verdict a contract gives malformed calldata
    let proof_file = match ProofFile::load(&args.proof) {
        Ok(file) => file,
        Err(FileError::Io(e)) => return Err(CliError::usage(e)),
        Err(_) => {
            println!("false");
            return Err(CliError::InvalidProof);
        }
    };

    let accepted = verify(
        &verifying_key,
        &proof_file.public_inputs,
        &proof_file.proof,
    )?;
    println!("{accepted}");
    if accepted {
        Ok(())
    } else {
        Err(CliError::InvalidProof)
    }
}
