//! The questionnaire evaluation circuit.
//!
//! Ten agree/disagree questions in two groups of five. Each group
//! contributes one attribute bit to the result: the bit is 1 when at
//! least three answers in the group match the secret answer key. The
//! circuit proves, without revealing answers or key, that
//!
//! - the published result code follows from the submitted answers and the
//!   committed key,
//! - the key is the one behind the public commitment, and
//! - the proof was issued for one specific recipient address.
//!
//! Public inputs, in order: result code, key commitment, recipient.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use rand::RngCore;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::backend::Scalar;
use crate::constants::{GROUP_SIZE, GROUP_THRESHOLD, QUESTION_COUNT};
use crate::mimc::{self, MimcParams};
use crate::r1cs::{Assignment, ConstraintSystem, ConstraintSystemBuilder, LinearCombination, VarIndex};

/// Errors from circuit input validation and witness synthesis.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum CircuitError {
    /// An answer vector did not have exactly ten entries.
    #[error("expected {QUESTION_COUNT} answers, got {0}")]
    BadAnswerCount(usize),
    /// An answer entry was neither 0 nor 1.
    #[error("answer at index {index} must be 0 or 1, got {value}")]
    BadAnswerValue {
        /// Question index.
        index: usize,
        /// Offending value.
        value: u8,
    },
    /// A bitmask had bits beyond the ten question positions.
    #[error("bitmask {0:#x} exceeds {QUESTION_COUNT} bits")]
    MaskTooWide(u16),
    /// The commitment blind was zero.
    #[error("answer-key blind must be nonzero")]
    ZeroBlind,
    /// A result code was outside 0..=3.
    #[error("result code {0} out of range 0..=3")]
    ResultOutOfRange(u8),
    /// An address string failed to parse.
    #[error("malformed address: {0}")]
    BadAddress(String),
}

/// Ten binary answers, bit `i` = answer to question `i` (LSB = question 0).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct AnswerVector(u16);

impl AnswerVector {
    /// Builds from exactly ten 0/1 entries, index = question number.
    pub fn from_bits(bits: &[u8]) -> Result<Self, CircuitError> {
        if bits.len() != QUESTION_COUNT {
            return Err(CircuitError::BadAnswerCount(bits.len()));
        }
        let mut mask = 0u16;
        for (index, &value) in bits.iter().enumerate() {
            match value {
                0 => {}
                1 => mask |= 1 << index,
                _ => return Err(CircuitError::BadAnswerValue { index, value }),
            }
        }
        Ok(AnswerVector(mask))
    }

    /// Builds from a packed bitmask below 2^10.
    pub fn from_mask(mask: u16) -> Result<Self, CircuitError> {
        if mask >= 1 << QUESTION_COUNT {
            return Err(CircuitError::MaskTooWide(mask));
        }
        Ok(AnswerVector(mask))
    }

    /// Uniformly random answer vector.
    pub fn random(rng: &mut impl RngCore) -> Self {
        AnswerVector((rng.next_u32() & 0x3ff) as u16)
    }

    pub fn bit(&self, i: usize) -> bool {
        debug_assert!(i < QUESTION_COUNT);
        (self.0 >> i) & 1 == 1
    }

    pub fn bits(&self) -> [u8; QUESTION_COUNT] {
        std::array::from_fn(|i| self.bit(i) as u8)
    }

    /// Packed value `sum bit_i * 2^i`, which is also the key-packing wire.
    pub fn mask(&self) -> u16 {
        self.0
    }
}

/// The secret answer key: ten bits plus the commitment blind.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AnswerKey {
    bits: AnswerVector,
    blind: Scalar,
}

impl AnswerKey {
    pub fn new(bits: AnswerVector, blind: Scalar) -> Result<Self, CircuitError> {
        if blind.is_zero() {
            return Err(CircuitError::ZeroBlind);
        }
        Ok(AnswerKey { bits, blind })
    }

    /// Fresh random key bits and nonzero blind.
    pub fn random(rng: &mut impl RngCore) -> Self {
        let bits = AnswerVector::random(rng);
        let blind = loop {
            let candidate = Scalar::random(rng);
            if !candidate.is_zero() {
                break candidate;
            }
        };
        AnswerKey { bits, blind }
    }

    pub fn bits(&self) -> &AnswerVector {
        &self.bits
    }

    pub fn blind(&self) -> Scalar {
        self.blind
    }

    /// The public commitment `commit(packed bits, blind)`.
    pub fn commitment(&self, params: &MimcParams) -> Scalar {
        mimc::commit(Scalar::from(self.bits.mask() as u64), self.blind, params)
    }
}

/// Two-bit result code; bit `j` is attribute `j`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(try_from = "u8", into = "u8")]
pub struct ResultCode(u8);

impl ResultCode {
    pub fn new(value: u8) -> Result<Self, CircuitError> {
        if value > 3 {
            return Err(CircuitError::ResultOutOfRange(value));
        }
        Ok(ResultCode(value))
    }

    pub fn value(&self) -> u8 {
        self.0
    }

    /// Attribute bit `j` (0 or 1).
    pub fn attribute(&self, j: usize) -> u8 {
        debug_assert!(j < 2);
        (self.0 >> j) & 1
    }

    pub fn to_scalar(&self) -> Scalar {
        Scalar::from(self.0 as u64)
    }
}

impl TryFrom<u8> for ResultCode {
    type Error = CircuitError;
    fn try_from(value: u8) -> Result<Self, Self::Error> {
        ResultCode::new(value)
    }
}

impl From<ResultCode> for u8 {
    fn from(code: ResultCode) -> u8 {
        code.0
    }
}

impl fmt::Display for ResultCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// 20-byte recipient address, rendered as lowercase `0x` hex everywhere.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Address(pub [u8; 20]);

impl Address {
    /// Embeds the address big-endian into a field element. 160 bits fit
    /// far below the field order, so this is injective.
    pub fn to_scalar(&self) -> Scalar {
        Scalar::from_bytes_reduced(&self.0)
    }

    /// Random address (tests and the demo).
    pub fn random(rng: &mut impl RngCore) -> Self {
        let mut bytes = [0u8; 20];
        rng.fill_bytes(&mut bytes);
        Address(bytes)
    }
}

impl fmt::Display for Address {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "0x{}", hex::encode(self.0))
    }
}

impl FromStr for Address {
    type Err = CircuitError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let digits = s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")).unwrap_or(s);
        if digits.len() != 40 {
            return Err(CircuitError::BadAddress(format!(
                "expected 40 hex chars, got {}",
                digits.len()
            )));
        }
        let raw = hex::decode(digits)
            .map_err(|e| CircuitError::BadAddress(e.to_string()))?;
        let mut bytes = [0u8; 20];
        bytes.copy_from_slice(&raw);
        Ok(Address(bytes))
    }
}

impl Serialize for Address {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Address {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// The circuit's public inputs, in wire order.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct QuizStatement {
    pub result: ResultCode,
    pub commitment: Scalar,
    pub recipient: Scalar,
}

impl QuizStatement {
    /// Public-input vector in the fixed order (result, commitment,
    /// recipient) expected by the verifier.
    pub fn public_inputs(&self) -> Vec<Scalar> {
        vec![self.result.to_scalar(), self.commitment, self.recipient]
    }
}

/// Everything the prover knows: the user's answers and the answer key.
#[derive(Clone, Debug)]
pub struct QuizSecrets {
    pub answers: AnswerVector,
    pub key: AnswerKey,
}

/// Reference evaluator and test oracle: per-question match against the
/// key, then a >= 3 majority per group of five.
pub fn score_plain(answers: &AnswerVector, key_bits: &AnswerVector) -> ResultCode {
    let mut value = 0u8;
    for group in 0..2 {
        let start = group * GROUP_SIZE;
        let matches = (start..start + GROUP_SIZE)
            .filter(|&i| answers.bit(i) == key_bits.bit(i))
            .count() as u32;
        if matches >= GROUP_THRESHOLD {
            value |= 1 << group;
        }
    }
    ResultCode(value)
}

/// Wire indices of every named value in the circuit, in allocation order.
/// Kept public so tests and debugging tools can read or tamper with
/// specific wires.
#[derive(Clone, Debug)]
pub struct WireLayout {
    pub result: VarIndex,
    pub commitment: VarIndex,
    pub recipient: VarIndex,
    pub answers: [VarIndex; QUESTION_COUNT],
    pub key_bits: [VarIndex; QUESTION_COUNT],
    pub blind: VarIndex,
    pub matches: [VarIndex; QUESTION_COUNT],
    pub group_sums: [VarIndex; 2],
    /// Per group: the three sum-decomposition bits.
    pub sum_bits: [[VarIndex; 3]; 2],
    /// Per group: t = bit1 * bit0.
    pub threshold_and: [VarIndex; 2],
    /// Per group: u = bit2 * t.
    pub threshold_carry: [VarIndex; 2],
    pub attributes: [VarIndex; 2],
    pub key_packed: VarIndex,
    /// Per round: the square, fourth power, and fifth power wires of the
    /// commitment permutation.
    pub hash_rounds: Vec<[VarIndex; 3]>,
}

impl WireLayout {
    /// Final state wire of the commitment permutation (before the
    /// Miyaguchi-Preneel feed-forward).
    pub fn hash_output(&self) -> VarIndex {
        self.hash_rounds.last().expect("at least one round")[2]
    }
}

/// The frozen questionnaire constraint system plus its wire layout and
/// the hash parameters it was built with.
#[derive(Clone, Debug)]
pub struct QuizCircuit {
    cs: ConstraintSystem,
    layout: WireLayout,
    params: MimcParams,
}

fn one() -> LinearCombination {
    LinearCombination::term(VarIndex::ONE, Scalar::ONE)
}

fn wire(v: VarIndex) -> LinearCombination {
    LinearCombination::term(v, Scalar::ONE)
}

impl QuizCircuit {
    /// Builds the constraint system. The construction is deterministic:
    /// building twice yields byte-identical serializations.
    ///
    /// Gadgets, in fixed order:
    /// 1. booleanity of the 20 answer/key bits;
    /// 2. per-question match bit `m = 1 - (a - k)^2` via
    ///    `2a * k = a + k + m - 1`;
    /// 3. per-group match sums (linear);
    /// 4. per-group threshold: 3-bit decomposition of the sum plus an
    ///    AND/OR tree giving `attr = [sum >= 3]`;
    /// 5. result binding `result = attr0 + 2*attr1`;
    /// 6. key packing (linear);
    /// 7. in-circuit commitment: the hash permutation as x^5 chains per
    ///    round, then equality with the commitment input;
    /// 8. recipient usage `recipient * 1 = recipient`.
    pub fn build(params: &MimcParams) -> Self {
        // the round gadgets below are square-square-multiply chains
        assert_eq!(
            params.exponent(),
            5,
            "circuit multiplication chains are specialized to exponent 5"
        );
        let mut cs = ConstraintSystemBuilder::new();

        let result = cs.alloc_public();
        let commitment = cs.alloc_public();
        let recipient = cs.alloc_public();

        let answers: [VarIndex; QUESTION_COUNT] = std::array::from_fn(|_| cs.alloc_private());
        let key_bits: [VarIndex; QUESTION_COUNT] = std::array::from_fn(|_| cs.alloc_private());
        let blind = cs.alloc_private();

        // (1) booleanity: x * (x - 1) = 0
        for &bit in answers.iter().chain(key_bits.iter()) {
            cs.enforce(
                wire(bit),
                LinearCombination::from_terms([(bit, Scalar::ONE), (VarIndex::ONE, -Scalar::ONE)]),
                LinearCombination::zero(),
            );
        }

        // (2) match bits: 2a * k = a + k + m - 1 forces m = 1 - (a - k)^2
        let matches: [VarIndex; QUESTION_COUNT] = std::array::from_fn(|_| cs.alloc_private());
        for i in 0..QUESTION_COUNT {
            cs.enforce(
                LinearCombination::term(answers[i], Scalar::from(2)),
                wire(key_bits[i]),
                LinearCombination::from_terms([
                    (answers[i], Scalar::ONE),
                    (key_bits[i], Scalar::ONE),
                    (matches[i], Scalar::ONE),
                    (VarIndex::ONE, -Scalar::ONE),
                ]),
            );
        }

        // (3) group sums
        let group_sums: [VarIndex; 2] = std::array::from_fn(|_| cs.alloc_private());
        #[allow(clippy::needless_range_loop)]
        for group in 0..2 {
            let start = group * GROUP_SIZE;
            cs.enforce(
                wire(group_sums[group]),
                one(),
                LinearCombination::from_terms(
                    (start..start + GROUP_SIZE).map(|i| (matches[i], Scalar::ONE)),
                ),
            );
        }

        // (4) threshold per group: with sum = b0 + 2*b1 + 4*b2,
        //     attr = b2 + b1*b0 - b2*b1*b0 = [sum >= 3] for sum in 0..8
        let mut sum_bits = [[VarIndex::ONE; 3]; 2];
        let mut threshold_and = [VarIndex::ONE; 2];
        let mut threshold_carry = [VarIndex::ONE; 2];
        let mut attributes = [VarIndex::ONE; 2];
        for group in 0..2 {
            let bits: [VarIndex; 3] = std::array::from_fn(|_| cs.alloc_private());
            for &bit in &bits {
                cs.enforce(
                    wire(bit),
                    LinearCombination::from_terms([
                        (bit, Scalar::ONE),
                        (VarIndex::ONE, -Scalar::ONE),
                    ]),
                    LinearCombination::zero(),
                );
            }
            cs.enforce(
                wire(group_sums[group]),
                one(),
                LinearCombination::from_terms([
                    (bits[0], Scalar::ONE),
                    (bits[1], Scalar::from(2)),
                    (bits[2], Scalar::from(4)),
                ]),
            );
            let t = cs.alloc_private();
            cs.enforce(wire(bits[1]), wire(bits[0]), wire(t));
            let u = cs.alloc_private();
            cs.enforce(wire(bits[2]), wire(t), wire(u));
            let attr = cs.alloc_private();
            cs.enforce(
                wire(attr),
                one(),
                LinearCombination::from_terms([
                    (bits[2], Scalar::ONE),
                    (t, Scalar::ONE),
                    (u, -Scalar::ONE),
                ]),
            );
            sum_bits[group] = bits;
            threshold_and[group] = t;
            threshold_carry[group] = u;
            attributes[group] = attr;
        }

        // (5) result binding: (result - attr0 - 2*attr1) * 1 = 0
        cs.enforce(
            LinearCombination::from_terms([
                (result, Scalar::ONE),
                (attributes[0], -Scalar::ONE),
                (attributes[1], -Scalar::from(2)),
            ]),
            one(),
            LinearCombination::zero(),
        );

        // (6) key packing: key_packed = sum k_i * 2^i
        let key_packed = cs.alloc_private();
        cs.enforce(
            wire(key_packed),
            one(),
            LinearCombination::from_terms(
                key_bits
                    .iter()
                    .enumerate()
                    .map(|(i, &k)| (k, Scalar::from(1u64 << i))),
            ),
        );

        // (7) commitment: per round, base = state + blind + c_i and the
        //     chain sq = base^2, quad = sq^2, next = quad * base
        let mut hash_rounds = Vec::with_capacity(params.rounds());
        let mut state = key_packed;
        for &constant in params.round_constants() {
            let base = LinearCombination::from_terms([
                (state, Scalar::ONE),
                (blind, Scalar::ONE),
                (VarIndex::ONE, constant),
            ]);
            let sq = cs.alloc_private();
            cs.enforce(base.clone(), base.clone(), wire(sq));
            let quad = cs.alloc_private();
            cs.enforce(wire(sq), wire(sq), wire(quad));
            let fifth = cs.alloc_private();
            cs.enforce(wire(quad), base, wire(fifth));
            hash_rounds.push([sq, quad, fifth]);
            state = fifth;
        }
        // compress output = state + blind (permutation feed-forward)
        //                 + key_packed + blind (Miyaguchi-Preneel)
        cs.enforce(
            LinearCombination::from_terms([
                (state, Scalar::ONE),
                (blind, Scalar::from(2)),
                (key_packed, Scalar::ONE),
            ]),
            one(),
            wire(commitment),
        );

        // (8) recipient usage
        cs.enforce(wire(recipient), one(), wire(recipient));

        let layout = WireLayout {
            result,
            commitment,
            recipient,
            answers,
            key_bits,
            blind,
            matches,
            group_sums,
            sum_bits,
            threshold_and,
            threshold_carry,
            attributes,
            key_packed,
            hash_rounds,
        };

        QuizCircuit {
            cs: cs.freeze(),
            layout,
            params: params.clone(),
        }
    }

    /// Shared instance built with the standard hash parameters.
    pub fn standard() -> &'static QuizCircuit {
        static CIRCUIT: OnceLock<QuizCircuit> = OnceLock::new();
        CIRCUIT.get_or_init(|| QuizCircuit::build(MimcParams::standard()))
    }

    pub fn constraint_system(&self) -> &ConstraintSystem {
        &self.cs
    }

    pub fn layout(&self) -> &WireLayout {
        &self.layout
    }

    pub fn params(&self) -> &MimcParams {
        &self.params
    }

    /// SHA-256 of the canonical constraint-system serialization.
    pub fn digest(&self) -> [u8; 32] {
        self.cs.digest()
    }

    /// Computes the full wire vector for the given secrets and recipient,
    /// together with the public statement it satisfies. The result code is
    /// scored with [`score_plain`], the commitment with [`mimc::commit`].
    ///
    /// The circuit exponent is fixed at 5 by the x^5 multiplication
    /// chains, matching the standard parameters.
    pub fn synthesize(
        &self,
        secrets: &QuizSecrets,
        recipient: Scalar,
    ) -> Result<(Assignment, QuizStatement), CircuitError> {
        let answers = secrets.answers;
        let key = &secrets.key;
        if key.blind().is_zero() {
            return Err(CircuitError::ZeroBlind);
        }

        let result = score_plain(&answers, key.bits());
        let key_packed = Scalar::from(key.bits().mask() as u64);
        let commitment = mimc::commit(key_packed, key.blind(), &self.params);

        let mut wires = vec![Scalar::ZERO; self.cs.num_wires()];
        wires[0] = Scalar::ONE;
        let mut set = |v: VarIndex, s: Scalar| wires[v.index()] = s;

        let layout = &self.layout;
        set(layout.result, result.to_scalar());
        set(layout.commitment, commitment);
        set(layout.recipient, recipient);
        for i in 0..QUESTION_COUNT {
            set(layout.answers[i], Scalar::from(answers.bit(i) as u64));
            set(layout.key_bits[i], Scalar::from(key.bits().bit(i) as u64));
        }
        set(layout.blind, key.blind());

        let mut group_matches = [0u64; 2];
        for i in 0..QUESTION_COUNT {
            let matched = answers.bit(i) == key.bits().bit(i);
            set(layout.matches[i], Scalar::from(matched as u64));
            if matched {
                group_matches[i / GROUP_SIZE] += 1;
            }
        }
        #[allow(clippy::needless_range_loop)]
        for group in 0..2 {
            let sum = group_matches[group];
            set(layout.group_sums[group], Scalar::from(sum));
            let bits = [sum & 1, (sum >> 1) & 1, (sum >> 2) & 1];
            for (j, &b) in bits.iter().enumerate() {
                set(layout.sum_bits[group][j], Scalar::from(b));
            }
            let t = bits[1] * bits[0];
            let u = bits[2] * t;
            set(layout.threshold_and[group], Scalar::from(t));
            set(layout.threshold_carry[group], Scalar::from(u));
            set(layout.attributes[group], Scalar::from(bits[2] + t - u));
        }

        set(layout.key_packed, key_packed);
        let mut state = key_packed;
        for (round, &constant) in self.params.round_constants().iter().enumerate() {
            let base = state + key.blind() + constant;
            let sq = base * base;
            let quad = sq * sq;
            let fifth = quad * base;
            let [sq_wire, quad_wire, fifth_wire] = layout.hash_rounds[round];
            set(sq_wire, sq);
            set(quad_wire, quad);
            set(fifth_wire, fifth);
            state = fifth;
        }

        let assignment = Assignment::from_wires(wires).expect("wire 0 is one");
        let statement = QuizStatement {
            result,
            commitment,
            recipient,
        };
        Ok((assignment, statement))
    }
}
