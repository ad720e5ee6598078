//! Contract state-machine tests over real proofs.
//!
//! A single seeded setup is shared by every test; proving is the slow
//! part, so fixtures are built once.

use std::sync::OnceLock;

use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

use zkquiz_chain::{
    append_transaction, read_transactions, replay, Address, ChainError, ContractState, Rejection,
    Transaction, TxOutcome,
};
use zkquiz_core::backend::Scalar;
use zkquiz_core::circuit::{AnswerKey, AnswerVector, QuizCircuit, QuizSecrets};
use zkquiz_core::groth16::{prove, r1cs_to_qap, setup, Proof, ProvingKey, Qap, VerifyingKey};

struct Fixture {
    proving_key: ProvingKey,
    verifying_key: VerifyingKey,
    qap: Qap,
    key: AnswerKey,
    commitment: Scalar,
}

fn fixture() -> &'static Fixture {
    static FIXTURE: OnceLock<Fixture> = OnceLock::new();
    FIXTURE.get_or_init(|| {
        let mut rng = ChaCha20Rng::seed_from_u64(0xc0ffee);
        let circuit = QuizCircuit::standard();
        let (proving_key, verifying_key) =
            setup(circuit.constraint_system(), &mut rng).unwrap();
        let qap = r1cs_to_qap(circuit.constraint_system()).unwrap();
        let key = AnswerKey::random(&mut rng);
        let commitment = key.commitment(circuit.params());
        Fixture {
            proving_key,
            verifying_key,
            qap,
            key,
            commitment,
        }
    })
}

fn honest_proof(fx: &Fixture, recipient: Address, rng: &mut ChaCha20Rng) -> (u8, Proof) {
    let circuit = QuizCircuit::standard();
    let secrets = QuizSecrets {
        answers: AnswerVector::random(rng),
        key: fx.key.clone(),
    };
    let (assignment, statement) = circuit
        .synthesize(&secrets, recipient.to_scalar())
        .unwrap();
    let proof = prove(&fx.proving_key, &fx.qap, &assignment, rng).unwrap();
    (statement.result.value(), proof)
}

#[test]
fn fresh_deploy_is_empty() {
    let fx = fixture();
    let state = ContractState::deploy(fx.verifying_key.clone(), fx.commitment).unwrap();
    assert_eq!(state.total_supply(), 0);
    assert_eq!(state.tx_count(), 0);
    assert!(state
        .token_of(&Address([1u8; 20]))
        .is_none());
    // identical deploys serialize identically
    let again = ContractState::deploy(fx.verifying_key.clone(), fx.commitment).unwrap();
    assert_eq!(state.to_canonical_bytes(), again.to_canonical_bytes());
}

#[test]
fn deploy_rejects_a_foreign_circuit_key() {
    let fx = fixture();
    let mut wrong = fx.verifying_key.clone();
    wrong.circuit_digest = [0u8; 32];
    assert!(matches!(
        ContractState::deploy(wrong, fx.commitment),
        Err(ChainError::WrongCircuit)
    ));
}

#[test]
fn honest_mint_issues_token_one() {
    let fx = fixture();
    let mut rng = ChaCha20Rng::seed_from_u64(1);
    let mut state = ContractState::deploy(fx.verifying_key.clone(), fx.commitment).unwrap();
    let caller = Address::random(&mut rng);
    let (result, proof) = honest_proof(fx, caller, &mut rng);

    let receipt = state.mint(caller, result, &proof).unwrap();
    assert_eq!(receipt.token_id, 1);
    assert_eq!(receipt.sequence, 1);
    let record = state.token_of(&caller).unwrap();
    assert_eq!(record.result, result);
    assert_eq!(record.minted_at, 1);
    assert_eq!(state.total_supply(), 1);
}

#[test]
fn second_mint_per_address_is_rejected() {
    let fx = fixture();
    let mut rng = ChaCha20Rng::seed_from_u64(2);
    let mut state = ContractState::deploy(fx.verifying_key.clone(), fx.commitment).unwrap();
    let caller = Address::random(&mut rng);
    let (result, proof) = honest_proof(fx, caller, &mut rng);
    state.mint(caller, result, &proof).unwrap();

    // a fresh, perfectly valid proof is still refused
    let (result2, proof2) = honest_proof(fx, caller, &mut rng);
    assert_eq!(
        state.mint(caller, result2, &proof2),
        Err(Rejection::AlreadyMinted)
    );
    assert_eq!(state.total_supply(), 1);
}

#[test]
fn replayed_proof_from_another_caller_is_rejected() {
    let fx = fixture();
    let mut rng = ChaCha20Rng::seed_from_u64(3);
    let mut state = ContractState::deploy(fx.verifying_key.clone(), fx.commitment).unwrap();
    let recipient = Address::random(&mut rng);
    let thief = Address::random(&mut rng);
    assert_ne!(recipient, thief);
    let (result, proof) = honest_proof(fx, recipient, &mut rng);

    assert_eq!(
        state.mint(thief, result, &proof),
        Err(Rejection::InvalidProof)
    );
    assert_eq!(state.total_supply(), 0);
}

#[test]
fn out_of_range_result_is_rejected_before_verification() {
    let fx = fixture();
    let mut rng = ChaCha20Rng::seed_from_u64(4);
    let mut state = ContractState::deploy(fx.verifying_key.clone(), fx.commitment).unwrap();
    let caller = Address::random(&mut rng);
    let (_, proof) = honest_proof(fx, caller, &mut rng);
    assert_eq!(
        state.mint(caller, 4, &proof),
        Err(Rejection::ResultOutOfRange)
    );
}

#[test]
fn transfers_are_always_soulbound() {
    let fx = fixture();
    let mut rng = ChaCha20Rng::seed_from_u64(5);
    let mut state = ContractState::deploy(fx.verifying_key.clone(), fx.commitment).unwrap();
    let owner = Address::random(&mut rng);
    let other = Address::random(&mut rng);
    let (result, proof) = honest_proof(fx, owner, &mut rng);
    state.mint(owner, result, &proof).unwrap();

    let before = state.to_canonical_bytes();
    // existing token
    assert_eq!(state.transfer(owner, other, 1), Rejection::Soulbound);
    // nonexistent token
    assert_eq!(state.transfer(owner, other, 999), Rejection::Soulbound);
    assert_eq!(state.to_canonical_bytes(), before);
}

#[test]
fn rejected_transactions_leave_the_state_bytes_unchanged() {
    let fx = fixture();
    let mut rng = ChaCha20Rng::seed_from_u64(6);
    let mut state = ContractState::deploy(fx.verifying_key.clone(), fx.commitment).unwrap();
    let caller = Address::random(&mut rng);
    let (result, proof) = honest_proof(fx, caller, &mut rng);
    state.mint(caller, result, &proof).unwrap();
    let before = state.to_canonical_bytes();

    let mut tampered = proof;
    tampered.a += zkquiz_core::backend::G1Point::generator();
    let fresh = Address::random(&mut rng);
    assert_eq!(
        state.mint(fresh, result, &tampered),
        Err(Rejection::InvalidProof)
    );
    assert_eq!(state.mint(caller, result, &proof), Err(Rejection::AlreadyMinted));
    assert_eq!(state.mint(fresh, 9, &proof), Err(Rejection::ResultOutOfRange));
    assert_eq!(state.to_canonical_bytes(), before);
}

#[test]
fn save_load_round_trip_and_corruption_detection() {
    let fx = fixture();
    let mut rng = ChaCha20Rng::seed_from_u64(7);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("chain.json");

    let mut state = ContractState::deploy(fx.verifying_key.clone(), fx.commitment).unwrap();
    let caller = Address::random(&mut rng);
    let (result, proof) = honest_proof(fx, caller, &mut rng);
    state.mint(caller, result, &proof).unwrap();
    state.save(&path).unwrap();

    let loaded = ContractState::load(&path).unwrap();
    assert_eq!(loaded, state);
    assert_eq!(loaded.to_canonical_bytes(), state.to_canonical_bytes());

    // truncation must be an error, not a silently empty state
    let raw = std::fs::read(&path).unwrap();
    std::fs::write(&path, &raw[..raw.len() / 2]).unwrap();
    assert!(ContractState::load(&path).is_err());

    // a flipped byte in the body fails the checksum
    let mut flipped = raw.clone();
    let pos = flipped.iter().position(|b| *b == b'1').unwrap();
    flipped[pos] = b'2';
    std::fs::write(&path, &flipped).unwrap();
    assert!(ContractState::load(&path).is_err());
}

#[test]
fn replaying_the_log_reproduces_the_state() {
    let fx = fixture();
    let mut rng = ChaCha20Rng::seed_from_u64(8);
    let dir = tempfile::tempdir().unwrap();
    let log_path = dir.path().join("txlog.jsonl");

    let mut live = ContractState::deploy(fx.verifying_key.clone(), fx.commitment).unwrap();
    for i in 0..20 {
        let tx = if i % 5 == 4 {
            // sprinkle in rejected transfers
            Transaction::Transfer {
                from: Address::random(&mut rng),
                to: Address::random(&mut rng),
                token_id: i as u64,
            }
        } else {
            let caller = Address::random(&mut rng);
            let (result, proof) = honest_proof(fx, caller, &mut rng);
            Transaction::Mint {
                caller,
                result,
                proof,
            }
        };
        append_transaction(&log_path, &tx).unwrap();
        live.apply(&tx);
    }

    let transactions = read_transactions(&log_path).unwrap();
    assert_eq!(transactions.len(), 20);
    let (replayed, outcomes) =
        replay(fx.verifying_key.clone(), fx.commitment, &transactions).unwrap();
    assert_eq!(replayed.to_canonical_bytes(), live.to_canonical_bytes());
    assert_eq!(outcomes.len(), 20);
    assert_eq!(
        outcomes
            .iter()
            .filter(|o| matches!(o, TxOutcome::Minted(_)))
            .count(),
        16
    );
    assert_eq!(replayed.total_supply(), 16);
}

#[test]
fn registry_is_ordered_by_token_id_and_owner_unique() {
    let fx = fixture();
    let mut rng = ChaCha20Rng::seed_from_u64(9);
    let mut state = ContractState::deploy(fx.verifying_key.clone(), fx.commitment).unwrap();
    for _ in 0..5 {
        let caller = Address::random(&mut rng);
        let (result, proof) = honest_proof(fx, caller, &mut rng);
        state.mint(caller, result, &proof).unwrap();
    }
    let ids: Vec<u64> = state.registry().iter().map(|r| r.token_id).collect();
    assert_eq!(ids, vec![1, 2, 3, 4, 5]);
    let mut owners: Vec<Address> = state.registry().iter().map(|r| r.owner).collect();
    owners.sort();
    owners.dedup();
    assert_eq!(owners.len(), 5);
    assert_eq!(state.total_supply(), 5);
}
