use serde_json::{json, Value};

use zkquiz_core::constants::SCHEMA_VERSION;
use zkquiz_core::files::ProofFile;

use crate::{CliError, EvaluateArgs};

/// Submits answers to the service and writes the returned proof file.
/// Returns the result code so the demo can reuse it.
pub fn run(args: EvaluateArgs) -> Result<u8, CliError> {
    let answers: Vec<u8> = args
        .answers
        .split(',')
        .map(|token| {
            token
                .trim()
                .parse::<u8>()
                .map_err(|e| CliError::usage(format!("--answers entry {token:?}: {e}")))
        })
        .collect::<Result<_, _>>()?;

    let url = format!("{}/evaluate", args.service.trim_end_matches('/'));
    let client = reqwest::blocking::Client::new();
    let response = client
        .post(&url)
        .json(&json!({ "answers": answers, "recipient": args.recipient }))
        .send()
        .map_err(|e| CliError::Service {
            code: "http_error".into(),
            message: e.to_string(),
        })?;

    let status = response.status();
    let body: Value = response.json().map_err(|e| CliError::Service {
        code: "http_error".into(),
        message: format!("invalid response body: {e}"),
    })?;

    if !status.is_success() {
        return Err(CliError::Service {
            code: body["error"].as_str().unwrap_or("unknown").to_string(),
            message: body["message"].as_str().unwrap_or_default().to_string(),
        });
    }

    let parsed: zkquiz_service::EvaluateResponse =
        serde_json::from_value(body).map_err(|e| CliError::Service {
            code: "http_error".into(),
            message: format!("unexpected response shape: {e}"),
        })?;

    let file = ProofFile {
        schema_version: SCHEMA_VERSION,
        result: parsed.result,
        proof: parsed.proof,
        public_inputs: parsed.public_inputs,
    };
    file.save(&args.out)?;
    println!("result: {}", file.result);
    println!("wrote proof to {}", args.out.display());
    Ok(file.result)
}
