pub mod demo;
pub mod evaluate;
pub mod keygen;
pub mod mint;
pub mod serve;
pub mod setup;
pub mod show;
pub mod verify;

use std::path::Path;

use crate::CliError;

/// Refuses to clobber existing outputs unless `--force` was given.
pub(crate) fn check_overwrite(path: &Path, force: bool) -> Result<(), CliError> {
    if path.exists() && !force {
        return Err(CliError::usage(format!(
            "{} already exists (use --force to overwrite)",
            path.display()
        )));
    }
    Ok(())
}
