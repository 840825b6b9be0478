//! Modal formulas: AST, parser/printer, sugar expansion, schema matching,
//! the non-modal companion translation, the standard translation printer
//! and characterizing-formula synthesis for finite MV chains.

mod clone_search;
mod companion;
mod parse;
mod render;
mod schema;

pub use clone_search::{characterizing_formula, is_characterizing, unary_term_clone, CloneEntry, EtaError};
pub use companion::{companion, companion_var, standard_translation};
pub use parse::parse;
pub use schema::{
    element_to_formula, match_schema, ElementCond, Schema, SchemaNode, Substitution,
};

use std::collections::BTreeSet;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormulaError {
    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown constant `@{0}` (constants are disabled here)")]
    UnknownConstant(String),
    #[error("the possibility operator is not supported here")]
    DiamondUnsupported,
}

/// Core modal formula tree. Sugar (`¬`, `↔`, `⊕`, powers) is expanded at
/// parse time; only these constructors appear.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Var(String),
    Zero,
    One,
    /// Canonical constant, by display label of the active algebra.
    Const(String),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Fusion(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Box(Box<Formula>),
    Diamond(Box<Formula>),
}

impl Formula {
    pub fn var(name: &str) -> Formula {
        Formula::Var(name.to_string())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(self) -> Formula {
        Formula::Implies(Box::new(self), Box::new(Formula::Zero))
    }

    pub fn and(self, other: Formula) -> Formula {
        Formula::And(Box::new(self), Box::new(other))
    }

    pub fn or(self, other: Formula) -> Formula {
        Formula::Or(Box::new(self), Box::new(other))
    }

    pub fn fus(self, other: Formula) -> Formula {
        Formula::Fusion(Box::new(self), Box::new(other))
    }

    pub fn implies(self, other: Formula) -> Formula {
        Formula::Implies(Box::new(self), Box::new(other))
    }

    /// `φ ↔ ψ := (φ→ψ) ⊙ (ψ→φ)`
    pub fn iff(self, other: Formula) -> Formula {
        self.clone()
            .implies(other.clone())
            .fus(other.implies(self))
    }

    /// `φ ⊕ ψ := ¬(¬φ ⊙ ¬ψ)`
    pub fn oplus(self, other: Formula) -> Formula {
        self.not().fus(other.not()).not()
    }

    pub fn boxed(self) -> Formula {
        Formula::Box(Box::new(self))
    }

    pub fn diamond(self) -> Formula {
        Formula::Diamond(Box::new(self))
    }

    /// `φ^m`, the m-fold fusion; `φ^0` is 1.
    pub fn power(self, m: usize) -> Formula {
        match m {
            0 => Formula::One,
            _ => {
                let mut acc = self.clone();
                for _ in 1..m {
                    acc = acc.fus(self.clone());
                }
                acc
            }
        }
    }

    /// `m.φ`, the m-fold strong sum; `0.φ` is 0.
    pub fn times(self, m: usize) -> Formula {
        match m {
            0 => Formula::Zero,
            _ => {
                let mut acc = self.clone();
                for _ in 1..m {
                    acc = acc.oplus(self.clone());
                }
                acc
            }
        }
    }

    pub fn children(&self) -> Vec<&Formula> {
        match self {
            Formula::Var(_) | Formula::Zero | Formula::One | Formula::Const(_) => vec![],
            Formula::And(a, b)
            | Formula::Or(a, b)
            | Formula::Fusion(a, b)
            | Formula::Implies(a, b) => vec![a, b],
            Formula::Box(a) | Formula::Diamond(a) => vec![a],
        }
    }

    /// Maximum nesting of modal operators.
    pub fn modal_depth(&self) -> usize {
        match self {
            Formula::Box(a) | Formula::Diamond(a) => 1 + a.modal_depth(),
            _ => self
                .children()
                .iter()
                .map(|c| c.modal_depth())
                .max()
                .unwrap_or(0),
        }
    }

    pub fn is_modal(&self) -> bool {
        self.modal_depth() > 0
    }

    pub fn has_diamond(&self) -> bool {
        match self {
            Formula::Diamond(_) => true,
            _ => self.children().iter().any(|c| c.has_diamond()),
        }
    }

    pub fn has_constants(&self) -> bool {
        match self {
            Formula::Const(_) => true,
            _ => self.children().iter().any(|c| c.has_constants()),
        }
    }

    /// Modal degrees of every `□`/`◇` occurrence, left to right: the
    /// degree of an occurrence is the modal depth of its subformula.
    pub fn box_degrees(&self) -> Vec<usize> {
        let mut out = Vec::new();
        fn walk(f: &Formula, out: &mut Vec<usize>) {
            match f {
                Formula::Box(a) | Formula::Diamond(a) => {
                    out.push(a.modal_depth());
                    walk(a, out);
                }
                _ => {
                    for c in f.children() {
                        walk(c, out);
                    }
                }
            }
        }
        walk(self, &mut out);
        out
    }

    /// Variable names, sorted.
    pub fn variables(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        fn walk(f: &Formula, out: &mut BTreeSet<String>) {
            match f {
                Formula::Var(v) => {
                    out.insert(v.clone());
                }
                _ => {
                    for c in f.children() {
                        walk(c, out);
                    }
                }
            }
        }
        walk(self, &mut out);
        out
    }

    /// Constant labels used, sorted.
    pub fn constant_labels(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        fn walk(f: &Formula, out: &mut BTreeSet<String>) {
            match f {
                Formula::Const(c) => {
                    out.insert(c.clone());
                }
                _ => {
                    for ch in f.children() {
                        walk(ch, out);
                    }
                }
            }
        }
        walk(self, &mut out);
        out
    }

    /// Simultaneous substitution of variables.
    pub fn substitute(&self, subst: &std::collections::BTreeMap<String, Formula>) -> Formula {
        match self {
            Formula::Var(v) => subst.get(v).cloned().unwrap_or_else(|| self.clone()),
            Formula::Zero | Formula::One | Formula::Const(_) => self.clone(),
            Formula::And(a, b) => a.substitute(subst).and(b.substitute(subst)),
            Formula::Or(a, b) => a.substitute(subst).or(b.substitute(subst)),
            Formula::Fusion(a, b) => a.substitute(subst).fus(b.substitute(subst)),
            Formula::Implies(a, b) => a.substitute(subst).implies(b.substitute(subst)),
            Formula::Box(a) => a.substitute(subst).boxed(),
            Formula::Diamond(a) => a.substitute(subst).diamond(),
        }
    }

    /// Rewrites `◇φ` to `¬□¬φ`. Only offered for involutive algebras;
    /// callers check that themselves.
    pub fn eliminate_diamond(&self) -> Formula {
        match self {
            Formula::Diamond(a) => a.eliminate_diamond().not().boxed().not(),
            Formula::Var(_) | Formula::Zero | Formula::One | Formula::Const(_) => self.clone(),
            Formula::And(a, b) => a.eliminate_diamond().and(b.eliminate_diamond()),
            Formula::Or(a, b) => a.eliminate_diamond().or(b.eliminate_diamond()),
            Formula::Fusion(a, b) => a.eliminate_diamond().fus(b.eliminate_diamond()),
            Formula::Implies(a, b) => a.eliminate_diamond().implies(b.eliminate_diamond()),
            Formula::Box(a) => a.eliminate_diamond().boxed(),
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", render::render(self))
    }
}

/// Rewrites every `◇ψ` as `¬□¬ψ`. The rewrite preserves evaluation only
/// when the algebra's negation is involutive, so it is refused otherwise.
pub fn diamond_as_box(
    alg: &crate::algebra::ResiduatedLattice,
    f: &Formula,
) -> Result<Formula, FormulaError> {
    if !crate::algebra::classify(alg).is_involutive {
        return Err(FormulaError::DiamondUnsupported);
    }
    Ok(f.eliminate_diamond())
}

#[cfg(test)]
mod tests;
