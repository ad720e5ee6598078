//! Rank-1 constraint systems.
//!
//! A constraint is `<a, w> * <b, w> = <c, w>` over the scalar field, with
//! `w` the wire vector: wire 0 is the constant one, then the public
//! inputs, then the private wires. Systems are built in a construction
//! phase ([`ConstraintSystemBuilder`]) and frozen into an immutable
//! [`ConstraintSystem`] before any QAP reduction or setup sees them.

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::backend::Scalar;
use crate::constants::{FORMAT_VERSION, R1CS_MAGIC};

/// Errors from constraint-system usage.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum R1csError {
    /// Assignment length does not match the system's wire count.
    #[error("assignment has {got} wires, system expects {expected}")]
    WireCountMismatch {
        /// Wires the system expects.
        expected: usize,
        /// Wires the assignment supplied.
        got: usize,
    },
    /// A linear combination referenced a wire the assignment lacks.
    #[error("wire index {index} out of range (assignment has {wires} wires)")]
    IndexOutOfRange {
        /// Offending index.
        index: usize,
        /// Wires available.
        wires: usize,
    },
    /// Assignment wire 0 was not the constant one.
    #[error("assignment wire 0 must be 1")]
    BadConstantWire,
}

/// Index of a wire. Index 0 is the constant-one wire.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub struct VarIndex(pub u32);

impl VarIndex {
    /// The constant-one wire.
    pub const ONE: VarIndex = VarIndex(0);

    pub fn index(&self) -> usize {
        self.0 as usize
    }
}

/// Sparse linear combination of wires.
///
/// Terms are kept sorted by wire index with coefficients pre-merged and
/// zero coefficients dropped, so equal combinations have equal
/// representations and serialization is canonical.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct LinearCombination {
    terms: Vec<(VarIndex, Scalar)>,
}

impl LinearCombination {
    /// The empty combination (evaluates to zero).
    pub fn zero() -> Self {
        LinearCombination { terms: Vec::new() }
    }

    /// Single term `coeff * wire`.
    pub fn term(var: VarIndex, coeff: Scalar) -> Self {
        Self::from_terms([(var, coeff)])
    }

    /// The constant `c` (a term on the constant-one wire).
    pub fn constant(c: Scalar) -> Self {
        Self::term(VarIndex::ONE, c)
    }

    /// Builds a combination from arbitrary terms, merging duplicates and
    /// dropping zero coefficients.
    pub fn from_terms(terms: impl IntoIterator<Item = (VarIndex, Scalar)>) -> Self {
        let mut terms: Vec<(VarIndex, Scalar)> = terms.into_iter().collect();
        terms.sort_by_key(|(v, _)| *v);
        let mut merged: Vec<(VarIndex, Scalar)> = Vec::with_capacity(terms.len());
        for (var, coeff) in terms {
            match merged.last_mut() {
                Some((last, acc)) if *last == var => *acc += coeff,
                _ => merged.push((var, coeff)),
            }
        }
        merged.retain(|(_, c)| !c.is_zero());
        LinearCombination { terms: merged }
    }

    /// Adds `coeff * wire`, keeping the representation normalized.
    pub fn add_term(&mut self, var: VarIndex, coeff: Scalar) {
        let mut terms = std::mem::take(&mut self.terms);
        terms.push((var, coeff));
        *self = Self::from_terms(terms);
    }

    pub fn terms(&self) -> &[(VarIndex, Scalar)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Evaluates the combination against an assignment.
    pub fn eval(&self, assignment: &Assignment) -> Result<Scalar, R1csError> {
        let wires = assignment.wires();
        let mut acc = Scalar::ZERO;
        for (var, coeff) in &self.terms {
            let value = wires.get(var.index()).ok_or(R1csError::IndexOutOfRange {
                index: var.index(),
                wires: wires.len(),
            })?;
            acc += *coeff * *value;
        }
        Ok(acc)
    }

    fn max_index(&self) -> Option<usize> {
        self.terms.last().map(|(v, _)| v.index())
    }
}

/// One gate: `<a, w> * <b, w> = <c, w>`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Constraint {
    pub a: LinearCombination,
    pub b: LinearCombination,
    pub c: LinearCombination,
}

/// Construction-phase constraint system. Allocate all public wires before
/// any private wire so indices stay dense in the `constant | public |
/// private` order.
#[derive(Debug, Default)]
pub struct ConstraintSystemBuilder {
    num_public: u32,
    num_private: u32,
    constraints: Vec<Constraint>,
}

impl ConstraintSystemBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    /// Allocates the next public-input wire.
    ///
    /// Panics if a private wire was already allocated: that would break
    /// the dense wire ordering, which is a bug in the circuit builder.
    pub fn alloc_public(&mut self) -> VarIndex {
        assert_eq!(
            self.num_private, 0,
            "public wires must be allocated before private wires"
        );
        self.num_public += 1;
        VarIndex(self.num_public)
    }

    /// Allocates the next private wire.
    pub fn alloc_private(&mut self) -> VarIndex {
        self.num_private += 1;
        VarIndex(self.num_public + self.num_private)
    }

    /// Appends the constraint `a * b = c`.
    pub fn enforce(&mut self, a: LinearCombination, b: LinearCombination, c: LinearCombination) {
        self.constraints.push(Constraint { a, b, c });
    }

    fn num_wires(&self) -> usize {
        1 + self.num_public as usize + self.num_private as usize
    }

    /// Freezes the system. Panics if any constraint references an
    /// unallocated wire (a builder bug, not a runtime condition).
    pub fn freeze(self) -> ConstraintSystem {
        let wires = self.num_wires();
        for (i, constraint) in self.constraints.iter().enumerate() {
            for lc in [&constraint.a, &constraint.b, &constraint.c] {
                if let Some(max) = lc.max_index() {
                    assert!(
                        max < wires,
                        "constraint {i} references unallocated wire {max} (have {wires})"
                    );
                }
            }
        }
        ConstraintSystem {
            num_public: self.num_public,
            num_private: self.num_private,
            constraints: self.constraints,
        }
    }
}

/// Outcome of a satisfiability check. A violation reports the first
/// failing constraint and its three evaluated inner products, which is
/// most of what circuit debugging needs.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum SatisfactionReport {
    Satisfied,
    Violated {
        /// Index of the first violated constraint.
        constraint_index: usize,
        /// Evaluated `<a, w>`.
        a: Scalar,
        /// Evaluated `<b, w>`.
        b: Scalar,
        /// Evaluated `<c, w>`.
        c: Scalar,
    },
}

impl SatisfactionReport {
    pub fn is_satisfied(&self) -> bool {
        matches!(self, SatisfactionReport::Satisfied)
    }
}

/// Frozen, immutable constraint system.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ConstraintSystem {
    num_public: u32,
    num_private: u32,
    constraints: Vec<Constraint>,
}

impl ConstraintSystem {
    /// Public-input wires (excluding the constant-one wire).
    pub fn num_public(&self) -> usize {
        self.num_public as usize
    }

    pub fn num_private(&self) -> usize {
        self.num_private as usize
    }

    /// Total wires including the constant-one wire.
    pub fn num_wires(&self) -> usize {
        1 + self.num_public() + self.num_private()
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    /// Checks every constraint exactly in the field.
    pub fn is_satisfied(&self, assignment: &Assignment) -> Result<SatisfactionReport, R1csError> {
        if assignment.wires().len() != self.num_wires() {
            return Err(R1csError::WireCountMismatch {
                expected: self.num_wires(),
                got: assignment.wires().len(),
            });
        }
        for (i, constraint) in self.constraints.iter().enumerate() {
            let a = constraint.a.eval(assignment)?;
            let b = constraint.b.eval(assignment)?;
            let c = constraint.c.eval(assignment)?;
            if a * b != c {
                return Ok(SatisfactionReport::Violated {
                    constraint_index: i,
                    a,
                    b,
                    c,
                });
            }
        }
        Ok(SatisfactionReport::Satisfied)
    }

    /// Canonical serialization: `"R1CS"` magic, version, wire counts,
    /// then each constraint as three length-prefixed term lists. Equal
    /// systems serialize to identical bytes.
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::new();
        out.extend_from_slice(R1CS_MAGIC);
        out.extend_from_slice(&FORMAT_VERSION.to_be_bytes());
        out.extend_from_slice(&self.num_public.to_be_bytes());
        out.extend_from_slice(&self.num_private.to_be_bytes());
        out.extend_from_slice(&(self.constraints.len() as u32).to_be_bytes());
        for constraint in &self.constraints {
            for lc in [&constraint.a, &constraint.b, &constraint.c] {
                out.extend_from_slice(&(lc.terms().len() as u32).to_be_bytes());
                for (var, coeff) in lc.terms() {
                    out.extend_from_slice(&var.0.to_be_bytes());
                    out.extend_from_slice(&coeff.to_bytes());
                }
            }
        }
        out
    }

    /// SHA-256 of the canonical serialization; pins key files and the
    /// simulated contract to one circuit.
    pub fn digest(&self) -> [u8; 32] {
        Sha256::digest(self.to_bytes()).into()
    }
}

/// Full wire-value vector for a constraint system.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Assignment {
    wires: Vec<Scalar>,
}

impl Assignment {
    /// Wraps a wire vector; wire 0 must be the constant one.
    pub fn from_wires(wires: Vec<Scalar>) -> Result<Self, R1csError> {
        if wires.first() != Some(&Scalar::ONE) {
            return Err(R1csError::BadConstantWire);
        }
        Ok(Assignment { wires })
    }

    pub fn wires(&self) -> &[Scalar] {
        &self.wires
    }

    /// Value of one wire.
    pub fn value(&self, var: VarIndex) -> Result<Scalar, R1csError> {
        self.wires
            .get(var.index())
            .copied()
            .ok_or(R1csError::IndexOutOfRange {
                index: var.index(),
                wires: self.wires.len(),
            })
    }

    /// Overwrites one wire. Exists for tamper-style tests and debugging;
    /// honest synthesis never needs it.
    pub fn set(&mut self, var: VarIndex, value: Scalar) -> Result<(), R1csError> {
        let len = self.wires.len();
        let slot = self
            .wires
            .get_mut(var.index())
            .ok_or(R1csError::IndexOutOfRange {
                index: var.index(),
                wires: len,
            })?;
        *slot = value;
        Ok(())
    }

    /// The public-input slice `wires[1..=num_public]`.
    pub fn public_inputs(&self, num_public: usize) -> &[Scalar] {
        &self.wires[1..=num_public]
    }
}
