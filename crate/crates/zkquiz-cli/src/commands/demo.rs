use std::net::TcpListener;
use std::path::Path;
use std::process::{Child, Command, Stdio};
use std::time::{Duration, Instant};

use rand::rngs::OsRng;
use rand::Rng;

use zkquiz_core::files::PublicParamsFile;

use crate::{CliError, DemoArgs, EvaluateArgs, KeygenArgs, MintArgs, SetupArgs, ShowArgs};

// kills the background service even when a later stage fails
struct ServeGuard(Child);

impl Drop for ServeGuard {
    fn drop(&mut self) {
        let _ = self.0.kill();
        let _ = self.0.wait();
    }
}

/// Scripted end-to-end run in a temporary directory: keygen, setup,
/// serve in the background, evaluate, deploy + mint, show. Exits zero
/// iff every stage succeeded; secrets never leave the temp dir.
pub fn run(args: DemoArgs) -> Result<(), CliError> {
    let dir = tempfile::Builder::new()
        .prefix("zkquiz-demo-")
        .tempdir()?;
    let root = dir.path();
    println!("demo directory: {}", root.display());

    println!("\n[1/6] keygen");
    let secret = root.join("secret.json");
    super::keygen::run(KeygenArgs {
        out: secret.clone(),
        seed: None,
        force: false,
    })?;

    println!("\n[2/6] setup");
    super::setup::run(SetupArgs {
        secret: secret.clone(),
        out_dir: root.to_path_buf(),
        force: false,
    })?;
    let params = PublicParamsFile::load(&root.join("public-params.json"))?;

    println!("\n[3/6] serve (background)");
    let port = free_port()?;
    let base_url = format!("http://127.0.0.1:{port}");
    let config_path = root.join("service.json");
    write_service_config(&config_path, root, port)?;
    let child = Command::new(std::env::current_exe()?)
        .args(["serve", "--config"])
        .arg(&config_path)
        .stdout(Stdio::null())
        .stderr(Stdio::null())
        .spawn()?;
    let _guard = ServeGuard(child);
    wait_for_health(&base_url)?;
    println!("service ready at {base_url}");

    println!("\n[4/6] evaluate");
    let recipient = format!("0x{}", hex::encode(OsRng.gen::<[u8; 20]>()));
    let answers = (0..10)
        .map(|_| if OsRng.gen::<bool>() { "1" } else { "0" })
        .collect::<Vec<_>>()
        .join(",");
    println!("answers: {answers}");
    let proof_path = root.join("proof.json");
    super::evaluate::run(EvaluateArgs {
        service: base_url.clone(),
        answers,
        recipient: recipient.clone(),
        out: proof_path.clone(),
    })?;

    println!("\n[5/6] deploy + mint");
    let state_path = root.join("chain.json");
    super::mint::run(MintArgs {
        state: state_path.clone(),
        caller: recipient,
        proof: proof_path,
        deploy: true,
        vk: Some(root.join("verifying.key")),
        commitment: Some(params.commitment.to_hex()),
        log: Some(root.join("txlog.jsonl")),
    })?;

    println!("\n[6/6] show");
    super::show::run(ShowArgs {
        state: state_path,
        owner: None,
    })?;

    if args.keep {
        let kept = dir.keep();
        println!("\nkept demo directory: {}", kept.display());
    }
    println!("\ndemo complete");
    Ok(())
}

fn free_port() -> Result<u16, CliError> {
    let listener = TcpListener::bind("127.0.0.1:0")?;
    Ok(listener.local_addr()?.port())
}

fn write_service_config(path: &Path, root: &Path, port: u16) -> Result<(), CliError> {
    let config = serde_json::json!({
        "listen": format!("127.0.0.1:{port}"),
        "secret_key_file": root.join("secret.json"),
        "proving_key_file": root.join("proving.key"),
        "verifying_key_file": root.join("verifying.key"),
        "public_params_file": root.join("public-params.json"),
        "max_concurrent_proofs": 2,
    });
    std::fs::write(path, serde_json::to_vec_pretty(&config)?)?;
    Ok(())
}

fn wait_for_health(base_url: &str) -> Result<(), CliError> {
    let client = reqwest::blocking::Client::new();
    let deadline = Instant::now() + Duration::from_secs(30);
    let url = format!("{base_url}/health");
    while Instant::now() < deadline {
        if let Ok(response) = client.get(&url).send() {
            if response.status().is_success() {
                return Ok(());
            }
        }
        std::thread::sleep(Duration::from_millis(200));
    }
    Err(CliError::Service {
        code: "unreachable".into(),
        message: "service did not become healthy within 30s".into(),
    })
}
