use std::sync::{Arc, RwLock};

use zkquiz_core::backend::Scalar;
use zkquiz_core::circuit::{AnswerKey, QuizCircuit};
use zkquiz_core::files::{PublicParamsFile, SecretKeyFile};
use zkquiz_core::groth16::{r1cs_to_qap, ProvingKey, Qap, VerifyingKey};

use crate::{ServiceConfig, ServiceError};

/// Everything a request handler needs, loaded once at startup and shared
/// read-only. No mutable state crosses requests.
pub struct ServiceState {
    pub(crate) circuit: &'static QuizCircuit,
    pub(crate) qap: Qap,
    pub(crate) proving_key: ProvingKey,
    pub(crate) verifying_key: VerifyingKey,
    pub(crate) key: AnswerKey,
    pub(crate) commitment: Scalar,
    pub(crate) verifying_key_digest: String,
    pub(crate) proof_slots: Arc<tokio::sync::Semaphore>,
}

/// Loads and cross-checks all key material:
///
/// - the secret key file must have safe permissions and matching hash
///   parameters;
/// - both Groth16 keys must have been generated for the questionnaire
///   circuit;
/// - the public params file must carry exactly the commitment recomputed
///   from the secret key and the digest of the loaded verifying key.
pub fn load_state(config: &ServiceConfig) -> Result<ServiceState, ServiceError> {
    let circuit = QuizCircuit::standard();
    let digest = circuit.digest();

    let key = SecretKeyFile::load(&config.secret_key_file, circuit.params())?;
    let proving_key = ProvingKey::load(&config.proving_key_file)?;
    proving_key.ensure_circuit(&digest)?;
    let verifying_key = VerifyingKey::load(&config.verifying_key_file)?;
    verifying_key.ensure_circuit(&digest)?;

    let params_file = PublicParamsFile::load(&config.public_params_file)?;
    let commitment = key.commitment(circuit.params());
    if params_file.commitment != commitment {
        return Err(ServiceError::ParamsMismatch(
            "commitment does not match the secret key".into(),
        ));
    }
    let verifying_key_digest = hex::encode(verifying_key.digest());
    if params_file.verifying_key_digest != verifying_key_digest {
        return Err(ServiceError::ParamsMismatch(
            "verifying key digest does not match the key file".into(),
        ));
    }

    let qap = r1cs_to_qap(circuit.constraint_system())?;

    Ok(ServiceState {
        circuit,
        qap,
        proving_key,
        verifying_key,
        key,
        commitment,
        verifying_key_digest,
        proof_slots: Arc::new(tokio::sync::Semaphore::new(config.max_concurrent_proofs)),
    })
}

/// Handle shared between the server and the loader: `None` until startup
/// finishes, then an immutable snapshot.
#[derive(Clone, Default)]
pub struct SharedState {
    inner: Arc<RwLock<Option<Arc<ServiceState>>>>,
}

impl SharedState {
    /// A handle that is ready from the start (tests and embedding).
    pub fn ready(state: ServiceState) -> Self {
        let shared = SharedState::default();
        shared.set_ready(state);
        shared
    }

    pub fn set_ready(&self, state: ServiceState) {
        *self.inner.write().expect("state lock") = Some(Arc::new(state));
    }

    pub(crate) fn get(&self) -> Option<Arc<ServiceState>> {
        self.inner.read().expect("state lock").clone()
    }
}
