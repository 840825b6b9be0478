//! Finite residuated lattices.
//!
//! An algebra is stored as index tables over an ordered list of element
//! labels. Every operation is an exact integer table lookup; the rational
//! labels of the usual chains are display-only. The residuum is always
//! derived from the fusion table and the order, never user-supplied.

mod build;
mod classify;
mod file;
mod filters;
mod presets;
mod terms;

pub use build::build_lattice;
pub use classify::{classify, AlgebraReport};
pub use file::{parse_algebra_file, render_algebra_file};
pub use filters::{
    boolean_decomposition, filter_generated, find_isomorphism, quotient, Decomposition, Filter,
};
pub use build::same_tables;
pub use presets::{boolean2, godel, lukasiewicz, mtl6, ordinal_sum, preset, product, wnm5};
pub use terms::{term_function, term_properties, TermProperties};

use std::fmt;
use std::sync::Arc;
use thiserror::Error;

/// An element of a finite residuated lattice, identified by its index in
/// the universe of its owning algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Element(pub usize);

impl Element {
    pub fn index(self) -> usize {
        self.0
    }
}

/// Errors raised while constructing or using an algebra.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("not a lattice: {0}")]
    NotALattice(String),
    #[error("fusion is not a commutative monoid with unit 1: {0}")]
    NotAMonoid(String),
    #[error("residuation fails at a={a}, b={b}, c={c}: {detail}")]
    ResiduationFails {
        a: String,
        b: String,
        c: String,
        detail: String,
    },
    #[error("bad preset parameter: {0}")]
    BadParam(String),
    #[error("unknown preset `{0}`")]
    UnknownPreset(String),
    #[error("unknown element label `{0}`")]
    UnknownLabel(String),
    #[error("algebra file error: {0}")]
    File(String),
}

/// A finite residuated lattice `⟨A, ∧, ∨, ⊙, →, 0, 1⟩` with all operations
/// tabulated. Immutable after construction; share via [`Arc`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResiduatedLattice {
    name: String,
    labels: Vec<String>,
    leq: Vec<Vec<bool>>,
    meet: Vec<Vec<usize>>,
    join: Vec<Vec<usize>>,
    fusion: Vec<Vec<usize>>,
    residuum: Vec<Vec<usize>>,
    bottom: usize,
    top: usize,
}

impl ResiduatedLattice {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    pub fn elements(&self) -> impl Iterator<Item = Element> {
        (0..self.labels.len()).map(Element)
    }

    pub fn label(&self, a: Element) -> &str {
        &self.labels[a.0]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Resolves a display label to its element.
    pub fn by_label(&self, label: &str) -> Result<Element, AlgebraError> {
        self.labels
            .iter()
            .position(|l| l == label)
            .map(Element)
            .ok_or_else(|| AlgebraError::UnknownLabel(label.to_string()))
    }

    pub fn bottom(&self) -> Element {
        Element(self.bottom)
    }

    pub fn top(&self) -> Element {
        Element(self.top)
    }

    pub fn leq(&self, a: Element, b: Element) -> bool {
        self.leq[a.0][b.0]
    }

    pub fn lt(&self, a: Element, b: Element) -> bool {
        a != b && self.leq[a.0][b.0]
    }

    pub fn meet(&self, a: Element, b: Element) -> Element {
        Element(self.meet[a.0][b.0])
    }

    pub fn join(&self, a: Element, b: Element) -> Element {
        Element(self.join[a.0][b.0])
    }

    pub fn fus(&self, a: Element, b: Element) -> Element {
        Element(self.fusion[a.0][b.0])
    }

    pub fn res(&self, a: Element, b: Element) -> Element {
        Element(self.residuum[a.0][b.0])
    }

    pub fn neg(&self, a: Element) -> Element {
        self.res(a, self.bottom())
    }

    /// `(a → b) ⊙ (b → a)`, the biconditional degree of equality.
    pub fn iff(&self, a: Element, b: Element) -> Element {
        self.fus(self.res(a, b), self.res(b, a))
    }

    pub fn oplus(&self, a: Element, b: Element) -> Element {
        self.neg(self.fus(self.neg(a), self.neg(b)))
    }

    /// Meet of an element iterator; empty meet is the top.
    pub fn meet_all(&self, iter: impl IntoIterator<Item = Element>) -> Element {
        iter.into_iter().fold(self.top(), |acc, x| self.meet(acc, x))
    }

    /// Join of an element iterator; empty join is the bottom.
    pub fn join_all(&self, iter: impl IntoIterator<Item = Element>) -> Element {
        iter.into_iter()
            .fold(self.bottom(), |acc, x| self.join(acc, x))
    }

    pub fn is_idempotent(&self, a: Element) -> bool {
        self.fus(a, a) == a
    }

    /// Boolean elements are those with `a ∨ ¬a = 1`.
    pub fn is_boolean(&self, a: Element) -> bool {
        self.join(a, self.neg(a)) == self.top()
    }

    pub fn is_coatom(&self, a: Element) -> bool {
        a != self.top()
            && self
                .elements()
                .all(|b| !(self.lt(a, b) && self.lt(b, self.top())))
    }

    /// Pairwise form of infinite distributivity: `a ∨ (x ∧ y) = (a ∨ x) ∧ (a ∨ y)`.
    pub fn is_distributive_element(&self, a: Element) -> bool {
        self.elements().all(|x| {
            self.elements().all(|y| {
                self.join(a, self.meet(x, y)) == self.meet(self.join(a, x), self.join(a, y))
            })
        })
    }

    /// The unique coatom, if there is exactly one.
    pub fn unique_coatom(&self) -> Option<Element> {
        let mut coatoms = self.elements().filter(|&a| self.is_coatom(a));
        match (coatoms.next(), coatoms.next()) {
            (Some(k), None) => Some(k),
            _ => None,
        }
    }

    pub fn shared(self) -> Arc<ResiduatedLattice> {
        Arc::new(self)
    }
}

impl fmt::Display for ResiduatedLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (|A| = {})", self.name, self.size())
    }
}

/// Law report entry for one of the distribution laws (2.2)–(2.6).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LawCheck {
    pub law: &'static str,
    pub pass: bool,
    /// Witnessing instantiation `(x, y1, y2)` (labels) when the law fails.
    pub witness: Option<(String, String, String)>,
}

/// Checks the distribution laws with two-element index sets. In a finite
/// lattice binary distribution extends to arbitrary finite joins or meets
/// by induction, so this is exhaustive.
pub fn check_laws(alg: &ResiduatedLattice) -> Vec<LawCheck> {
    let mut out = Vec::new();
    let witness = |x: Element, y1: Element, y2: Element| {
        Some((
            alg.label(x).to_string(),
            alg.label(y1).to_string(),
            alg.label(y2).to_string(),
        ))
    };
    let mut run = |law: &'static str, f: &dyn Fn(Element, Element, Element) -> bool| {
        for x in alg.elements() {
            for y1 in alg.elements() {
                for y2 in alg.elements() {
                    if !f(x, y1, y2) {
                        out.push(LawCheck {
                            law,
                            pass: false,
                            witness: witness(x, y1, y2),
                        });
                        return;
                    }
                }
            }
        }
        out.push(LawCheck {
            law,
            pass: true,
            witness: None,
        });
    };
    run("2.2", &|x, y1, y2| {
        alg.fus(x, alg.join(y1, y2)) == alg.join(alg.fus(x, y1), alg.fus(x, y2))
    });
    run("2.3", &|x, y1, y2| {
        alg.res(x, alg.meet(y1, y2)) == alg.meet(alg.res(x, y1), alg.res(x, y2))
    });
    run("2.4", &|y, x1, x2| {
        alg.res(alg.join(x1, x2), y) == alg.meet(alg.res(x1, y), alg.res(x2, y))
    });
    run("2.5", &|x, y1, y2| {
        alg.res(x, alg.join(y1, y2)) == alg.join(alg.res(x, y1), alg.res(x, y2))
    });
    run("2.6", &|y, x1, x2| {
        alg.res(alg.meet(x1, x2), y) == alg.join(alg.res(x1, y), alg.res(x2, y))
    });
    out
}

#[cfg(test)]
mod tests;
