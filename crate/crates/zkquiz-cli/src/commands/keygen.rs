use rand::rngs::OsRng;
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha20Rng;
use sha2::{Digest, Sha256};

use zkquiz_core::circuit::AnswerKey;
use zkquiz_core::files::SecretKeyFile;
use zkquiz_core::mimc::MimcParams;

use super::check_overwrite;
use crate::{CliError, KeygenArgs};

pub fn run(args: KeygenArgs) -> Result<(), CliError> {
    check_overwrite(&args.out, args.force)?;
    let params = MimcParams::standard();

    let key = match &args.seed {
        Some(seed_hex) => {
            let digits = seed_hex.strip_prefix("0x").unwrap_or(seed_hex);
            let raw = hex::decode(digits)
                .map_err(|e| CliError::usage(format!("--seed must be hex: {e}")))?;
            let mut rng = ChaCha20Rng::from_seed(Sha256::digest(&raw).into());
            AnswerKey::random(&mut rng)
        }
        None => {
            let mut rng: Box<dyn RngCore> = Box::new(OsRng);
            AnswerKey::random(&mut rng)
        }
    };

    SecretKeyFile::from_key(&key, params).save(&args.out)?;
    println!("wrote secret key to {}", args.out.display());
    println!("commitment: {}", key.commitment(params).to_hex());
    Ok(())
}
