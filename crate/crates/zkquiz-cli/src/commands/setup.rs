use rand::rngs::OsRng;

use zkquiz_core::circuit::QuizCircuit;
use zkquiz_core::files::{PublicParamsFile, SecretKeyFile};
use zkquiz_core::groth16::setup;

use super::check_overwrite;
use crate::{CliError, SetupArgs};

pub fn run(args: SetupArgs) -> Result<(), CliError> {
    let circuit = QuizCircuit::standard();
    let key = SecretKeyFile::load(&args.secret, circuit.params())?;

    std::fs::create_dir_all(&args.out_dir)?;
    let pk_path = args.out_dir.join("proving.key");
    let vk_path = args.out_dir.join("verifying.key");
    let params_path = args.out_dir.join("public-params.json");
    for path in [&pk_path, &vk_path, &params_path] {
        check_overwrite(path, args.force)?;
    }

    println!(
        "running trusted setup for the questionnaire circuit ({} constraints)...",
        circuit.constraint_system().constraints().len()
    );
    let (proving_key, verifying_key) = setup(circuit.constraint_system(), &mut OsRng)?;

    proving_key.save(&pk_path)?;
    verifying_key.save(&vk_path)?;
    let commitment = key.commitment(circuit.params());
    PublicParamsFile::new(commitment, verifying_key.digest()).save(&params_path)?;

    println!("wrote {}", pk_path.display());
    println!("wrote {}", vk_path.display());
    println!("wrote {}", params_path.display());
    println!("commitment: {}", commitment.to_hex());
    println!(
        "verifying key digest: 0x{}",
        hex::encode(verifying_key.digest())
    );
    Ok(())
}
