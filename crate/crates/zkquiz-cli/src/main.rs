//! `zkquiz` — operator and user entry point for the questionnaire
//! attestation protocol.
//!
//! Lifecycle: `keygen` creates the secret answer key, `setup` runs the
//! trusted setup and emits key material, `serve` runs the proving
//! service, `evaluate` submits answers and stores the proof, `mint`
//! submits the proof to the simulated contract, `verify` and `show`
//! inspect artifacts, and `demo` scripts the whole flow end to end.
//!
//! Exit codes are stable: 0 ok, 2 usage or config error, 3 service
//! rejection, 4 invalid proof, 5 already minted, 6 result out of range.

mod commands;
mod errors;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use errors::CliError;

#[derive(Parser)]
#[command(
    name = "zkquiz",
    version,
    about = "Questionnaire attestations with zero-knowledge proofs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a fresh secret answer key.
    Keygen(KeygenArgs),
    /// Run the trusted setup for the questionnaire circuit.
    Setup(SetupArgs),
    /// Run the proving service until interrupted.
    Serve(ServeArgs),
    /// Submit answers to a running service and store the proof.
    Evaluate(EvaluateArgs),
    /// Submit a proof to the simulated contract to mint a token.
    Mint(MintArgs),
    /// Verify a proof file offline against a verifying key.
    Verify(VerifyArgs),
    /// Inspect a chain state file.
    Show(ShowArgs),
    /// Run the whole protocol once in a temporary directory.
    Demo(DemoArgs),
}

#[derive(Args)]
pub struct KeygenArgs {
    /// Where to write the secret key file.
    #[arg(long)]
    out: PathBuf,
    /// Hex seed for deterministic output (tests and fixtures only).
    #[arg(long)]
    seed: Option<String>,
    /// Overwrite an existing file.
    #[arg(long)]
    force: bool,
}

#[derive(Args)]
pub struct SetupArgs {
    /// Secret key file produced by `keygen`.
    #[arg(long)]
    secret: PathBuf,
    /// Directory for proving.key, verifying.key, and public-params.json.
    #[arg(long)]
    out_dir: PathBuf,
    /// Overwrite existing output files.
    #[arg(long)]
    force: bool,
}

#[derive(Args)]
pub struct ServeArgs {
    /// Service config file (JSON).
    #[arg(long)]
    config: PathBuf,
}

#[derive(Args)]
pub struct EvaluateArgs {
    /// Base URL of the proving service, e.g. http://127.0.0.1:8080
    #[arg(long)]
    service: String,
    /// Ten comma-separated bits, e.g. 1,0,1,1,0,0,1,0,1,0
    #[arg(long)]
    answers: String,
    /// Recipient address the proof is bound to (40 hex chars).
    #[arg(long)]
    recipient: String,
    /// Where to write the proof file.
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
pub struct MintArgs {
    /// Chain state file (created with --deploy, updated by mints).
    #[arg(long)]
    state: PathBuf,
    /// Caller address submitting the proof.
    #[arg(long)]
    caller: String,
    /// Proof file from `evaluate`.
    #[arg(long)]
    proof: PathBuf,
    /// Deploy a fresh contract state before minting.
    #[arg(long)]
    deploy: bool,
    /// Verifying key file (required with --deploy).
    #[arg(long)]
    vk: Option<PathBuf>,
    /// Key commitment hex (required with --deploy).
    #[arg(long)]
    commitment: Option<String>,
    /// Append the transaction to this JSON-lines log.
    #[arg(long)]
    log: Option<PathBuf>,
}

#[derive(Args)]
pub struct VerifyArgs {
    /// Verifying key file.
    #[arg(long)]
    vk: PathBuf,
    /// Proof file from `evaluate`.
    #[arg(long)]
    proof: PathBuf,
}

#[derive(Args)]
pub struct ShowArgs {
    /// Chain state file.
    #[arg(long)]
    state: PathBuf,
    /// Show only this owner's token.
    #[arg(long)]
    owner: Option<String>,
}

#[derive(Args)]
pub struct DemoArgs {
    /// Keep the temporary directory instead of deleting it.
    #[arg(long)]
    keep: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Keygen(args) => commands::keygen::run(args),
        Command::Setup(args) => commands::setup::run(args),
        Command::Serve(args) => commands::serve::run(args),
        Command::Evaluate(args) => commands::evaluate::run(args).map(|_| ()),
        Command::Mint(args) => commands::mint::run(args).map(|_| ()),
        Command::Verify(args) => commands::verify::run(args),
        Command::Show(args) => commands::show::run(args),
        Command::Demo(args) => commands::demo::run(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(error) => {
            eprintln!("error: {error}");
            ExitCode::from(error.exit_code())
        }
    }
}
