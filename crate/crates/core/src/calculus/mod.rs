//! Axiom systems and Hilbert-style derivation checking.
//!
//! The non-modal base of a calculus is an oracle (exact consequence over
//! the finite algebra by enumeration) rather than a fixed axiom list; a
//! derivation step justified `nmtaut` is verified by box abstraction and
//! the oracle. The Gödel standard preset keeps an explicit axiom list and
//! no oracle.

mod derivation;
mod generate;
mod presets;

pub use derivation::{check_derivation, parse_derivation_file, Derivation, Justification, Step};
pub use generate::{generate_bookkeeping, generate_witnessing, soundness_probe, ProbeReport};
pub use presets::{preset_calculus, schema_box_one, schema_k, schema_md_in, CalculusPreset};

use crate::algebra::ResiduatedLattice;
use crate::formula::Schema;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CalcError {
    #[error("prerequisite fails: {0}")]
    PrerequisiteFails(String),
    #[error("invalid step {step}: {reason}")]
    InvalidStep { step: usize, reason: String },
    #[error("unknown axiom schema `{0}`")]
    UnknownSchema(String),
    #[error("unknown rule `{0}`")]
    UnknownRule(String),
    #[error("canonical constants are disabled in this calculus")]
    ConstantsDisabled,
    #[error("derivation file error: {0}")]
    File(String),
}

/// A named rule: finitely many premise schemas and a conclusion schema.
/// Element-indexed families (like the R_a rules) are expanded to finite
/// lists at preset construction time.
#[derive(Debug, Clone)]
pub struct Rule {
    pub name: String,
    pub premises: Vec<Schema>,
    pub conclusion: Schema,
}

/// How the non-modal base of the calculus is decided.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NonModalBase {
    /// Exact consequence over the finite algebra (box abstraction + full
    /// assignment enumeration).
    Oracle,
    /// No oracle; `nmtaut` steps are rejected. Used for syntax-only
    /// presets over infinite algebras.
    None,
}

/// Structural rules a calculus admits besides its named rules.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StructuralRules {
    pub modus_ponens: bool,
    pub necessity: bool,
    pub monotonicity: bool,
}

#[derive(Debug, Clone)]
pub struct Calculus {
    pub name: String,
    pub algebra: Arc<ResiduatedLattice>,
    /// Canonical constants allowed in formulas of this calculus.
    pub constants: bool,
    pub axioms: Vec<Schema>,
    pub rules: Vec<Rule>,
    pub base: NonModalBase,
    pub structural: StructuralRules,
}

impl Calculus {
    pub fn axiom(&self, name: &str) -> Option<&Schema> {
        self.axioms.iter().find(|s| s.name == name)
    }

    pub fn rule(&self, name: &str) -> Option<&Rule> {
        self.rules.iter().find(|r| r.name == name)
    }
}

#[cfg(test)]
mod tests;
