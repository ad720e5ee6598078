//! The proving service: the hidden backend that holds the secret answer
//! key, scores submitted answers, and returns the result with a Groth16
//! proof.
//!
//! Endpoints (HTTP/1.1, JSON, UTF-8):
//!
//! - `POST /evaluate` — body `{answers: [10 x 0|1], recipient: hex}`;
//!   returns `{result, proof: {a, b, c}, public_inputs}`. Every response
//!   is self-checked with the verifying key before it leaves the process.
//! - `GET /info` — the public parameters a client needs to cross-check
//!   the chain deployment.
//! - `GET /health` — liveness; `503` until key material finishes loading.
//!
//! Errors use the body shape `{error: code, message: text}`. Proof
//! generation is CPU-bound, so it runs on blocking threads behind a
//! semaphore; when all slots are taken the service sheds load with `503
//! busy` instead of queueing.

mod config;
mod routes;
mod state;

pub use config::ServiceConfig;
pub use routes::{router, EvaluateRequest, EvaluateResponse, InfoResponse};
pub use state::{load_state, ServiceState, SharedState};

use thiserror::Error;

/// Startup and configuration failures (request-level errors are HTTP
/// responses, not this type).
#[derive(Debug, Error)]
pub enum ServiceError {
    #[error("config: {0}")]
    Config(String),
    #[error(transparent)]
    File(#[from] zkquiz_core::files::FileError),
    #[error(transparent)]
    Groth16(#[from] zkquiz_core::groth16::Groth16Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("public params file disagrees with key material: {0}")]
    ParamsMismatch(String),
}

/// Binds the listener, starts serving immediately (health reports
/// `starting`), loads key material, then flips the service to ready.
/// Returns when the process receives SIGINT/SIGTERM.
pub async fn run(config: ServiceConfig) -> Result<(), ServiceError> {
    let listener = tokio::net::TcpListener::bind(&config.listen).await?;
    tracing::info!(addr = %listener.local_addr()?, "listening");

    let shared = SharedState::default();
    let app = router(shared.clone(), config.request_size_limit);
    let server = tokio::spawn(async move {
        axum::serve(listener, app)
            .with_graceful_shutdown(shutdown_signal())
            .await
    });

    let load_config = config.clone();
    let loaded = match tokio::task::spawn_blocking(move || load_state(&load_config)).await {
        Ok(Ok(state)) => state,
        Ok(Err(e)) => {
            server.abort();
            return Err(e);
        }
        Err(join_error) => {
            server.abort();
            return Err(ServiceError::Config(format!(
                "state loader panicked: {join_error}"
            )));
        }
    };
    shared.set_ready(loaded);
    tracing::info!("key material loaded, service ready");

    match server.await {
        Ok(result) => Ok(result?),
        Err(join_error) if join_error.is_cancelled() => Ok(()),
        Err(join_error) => Err(ServiceError::Config(format!(
            "server task panicked: {join_error}"
        ))),
    }
}

async fn shutdown_signal() {
    let ctrl_c = async {
        tokio::signal::ctrl_c()
            .await
            .expect("install ctrl-c handler");
    };
    #[cfg(unix)]
    let terminate = async {
        tokio::signal::unix::signal(tokio::signal::unix::SignalKind::terminate())
            .expect("install sigterm handler")
            .recv()
            .await;
    };
    #[cfg(not(unix))]
    let terminate = std::future::pending::<()>();

    tokio::select! {
        _ = ctrl_c => {}
        _ = terminate => {}
    }
    tracing::info!("shutdown signal received");
}
