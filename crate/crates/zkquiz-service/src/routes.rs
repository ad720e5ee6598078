use axum::extract::rejection::JsonRejection;
use axum::extract::{DefaultBodyLimit, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::{Deserialize, Serialize};
use serde_json::json;

use zkquiz_core::backend::Scalar;
use zkquiz_core::circuit::{Address, AnswerVector, CircuitError, QuizSecrets};
use zkquiz_core::constants::QUESTION_COUNT;
use zkquiz_core::groth16::{prove, verify, Proof};

use crate::state::SharedState;

/// Body of `POST /evaluate`.
#[derive(Debug, Deserialize)]
pub struct EvaluateRequest {
    /// Ten 0/1 entries, index = question number.
    pub answers: Vec<u8>,
    /// 40-hex-char recipient address the proof is bound to.
    pub recipient: String,
}

/// Body of a successful `POST /evaluate`. This is a closed whitelist: the
/// key bits and the blind never appear in any response.
#[derive(Debug, Serialize, Deserialize)]
pub struct EvaluateResponse {
    /// Result code 0..=3.
    pub result: u8,
    pub proof: Proof,
    /// Public inputs in verifier order: result, commitment, recipient.
    pub public_inputs: Vec<Scalar>,
}

/// Body of `GET /info`.
#[derive(Debug, Serialize, Deserialize)]
pub struct InfoResponse {
    pub commitment: Scalar,
    pub verifying_key_digest: String,
    pub question_count: usize,
}

/// Builds the service router.
pub fn router(state: SharedState, request_size_limit: usize) -> Router {
    Router::new()
        .route("/evaluate", post(evaluate))
        .route("/info", get(info))
        .route("/health", get(health))
        .layer(DefaultBodyLimit::max(request_size_limit))
        .with_state(state)
}

fn error_response(status: StatusCode, code: &str, message: impl Into<String>) -> Response {
    (
        status,
        Json(json!({ "error": code, "message": message.into() })),
    )
        .into_response()
}

fn not_ready() -> Response {
    error_response(
        StatusCode::SERVICE_UNAVAILABLE,
        "starting",
        "key material is still loading",
    )
}

async fn health(State(shared): State<SharedState>) -> Response {
    match shared.get() {
        Some(_) => (StatusCode::OK, Json(json!({ "status": "ok" }))).into_response(),
        None => (
            StatusCode::SERVICE_UNAVAILABLE,
            Json(json!({ "status": "starting" })),
        )
            .into_response(),
    }
}

async fn info(State(shared): State<SharedState>) -> Response {
    let Some(state) = shared.get() else {
        return not_ready();
    };
    Json(InfoResponse {
        commitment: state.commitment,
        verifying_key_digest: state.verifying_key_digest.clone(),
        question_count: QUESTION_COUNT,
    })
    .into_response()
}

async fn evaluate(
    State(shared): State<SharedState>,
    body: Result<Json<EvaluateRequest>, JsonRejection>,
) -> Response {
    let Some(state) = shared.get() else {
        return not_ready();
    };
    let request = match body {
        Ok(Json(request)) => request,
        Err(rejection) => {
            let status = rejection.status();
            let code = if status == StatusCode::PAYLOAD_TOO_LARGE {
                "too_large"
            } else {
                "bad_json"
            };
            return error_response(status, code, rejection.body_text());
        }
    };

    let answers = match AnswerVector::from_bits(&request.answers) {
        Ok(answers) => answers,
        Err(CircuitError::BadAnswerCount(n)) => {
            return error_response(
                StatusCode::BAD_REQUEST,
                "bad_answer_count",
                format!("expected {QUESTION_COUNT} answers, got {n}"),
            );
        }
        Err(e) => {
            return error_response(StatusCode::BAD_REQUEST, "bad_answer_value", e.to_string());
        }
    };
    let recipient: Address = match request.recipient.parse() {
        Ok(address) => address,
        Err(e) => {
            return error_response(StatusCode::BAD_REQUEST, "bad_recipient", e.to_string());
        }
    };

    // backpressure: refuse rather than queue when all proof slots are busy
    let permit = match state.proof_slots.clone().try_acquire_owned() {
        Ok(permit) => permit,
        Err(_) => {
            return error_response(
                StatusCode::SERVICE_UNAVAILABLE,
                "busy",
                "all proving slots are in use, retry later",
            );
        }
    };

    let worker_state = state.clone();
    let result = tokio::task::spawn_blocking(move || {
        let _permit = permit;
        prove_for(worker_state.as_ref(), answers, recipient)
    })
    .await;

    match result {
        Ok(Ok(response)) => {
            tracing::debug!(result = response.result, "evaluate ok");
            Json(response).into_response()
        }
        Ok(Err(message)) => {
            tracing::error!(%message, "evaluate self-check failed");
            error_response(StatusCode::INTERNAL_SERVER_ERROR, "internal", message)
        }
        Err(join_error) => {
            tracing::error!(%join_error, "prover task panicked");
            error_response(
                StatusCode::INTERNAL_SERVER_ERROR,
                "internal",
                "prover task failed",
            )
        }
    }
}

// Synthesize, prove, and self-verify. Any failure is reported without the
// proof: the service never returns a proof the chain would reject.
fn prove_for(
    state: &crate::state::ServiceState,
    answers: AnswerVector,
    recipient: Address,
) -> Result<EvaluateResponse, String> {
    let secrets = QuizSecrets {
        answers,
        key: state.key.clone(),
    };
    let (assignment, statement) = state
        .circuit
        .synthesize(&secrets, recipient.to_scalar())
        .map_err(|e| format!("witness synthesis: {e}"))?;
    let proof = prove(
        &state.proving_key,
        &state.qap,
        &assignment,
        &mut rand::rngs::OsRng,
    )
    .map_err(|e| format!("prover: {e}"))?;

    let public_inputs = statement.public_inputs();
    match verify(&state.verifying_key, &public_inputs, &proof) {
        Ok(true) => Ok(EvaluateResponse {
            result: statement.result.value(),
            proof,
            public_inputs,
        }),
        Ok(false) => Err("proof failed self-verification".into()),
        Err(e) => Err(format!("self-verification: {e}")),
    }
}
