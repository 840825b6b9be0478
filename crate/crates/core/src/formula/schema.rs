//! Formula schemas with formula metavariables (φ, ψ, …) and element
//! metavariables (ā, possibly side-conditioned), and one-way matching of
//! concrete formulas against them.

use super::Formula;
use crate::algebra::{classify, Element, ResiduatedLattice};
use std::collections::BTreeMap;

/// Side condition on an element metavariable.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ElementCond {
    Any,
    NonZero,
    Coatom,
    Distributive,
    Boolean,
}

impl ElementCond {
    pub fn holds(self, alg: &ResiduatedLattice, a: Element) -> bool {
        match self {
            ElementCond::Any => true,
            ElementCond::NonZero => a != alg.bottom(),
            ElementCond::Coatom => alg.is_coatom(a),
            ElementCond::Distributive => alg.is_distributive_element(a),
            ElementCond::Boolean => alg.is_boolean(a),
        }
    }
}

/// Schema tree: a formula whose leaves may be metavariables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SchemaNode {
    MetaFormula(String),
    MetaElement(String, ElementCond),
    Var(String),
    Zero,
    One,
    Const(String),
    And(Box<SchemaNode>, Box<SchemaNode>),
    Or(Box<SchemaNode>, Box<SchemaNode>),
    Fusion(Box<SchemaNode>, Box<SchemaNode>),
    Implies(Box<SchemaNode>, Box<SchemaNode>),
    Box(Box<SchemaNode>),
    Diamond(Box<SchemaNode>),
}

impl SchemaNode {
    pub fn meta(name: &str) -> SchemaNode {
        SchemaNode::MetaFormula(name.to_string())
    }

    pub fn meta_elem(name: &str, cond: ElementCond) -> SchemaNode {
        SchemaNode::MetaElement(name.to_string(), cond)
    }

    /// Lifts a concrete formula into a schema, turning the given variable
    /// names into formula metavariables.
    pub fn from_formula(f: &Formula, metavars: &[&str]) -> SchemaNode {
        match f {
            Formula::Var(v) if metavars.contains(&v.as_str()) => SchemaNode::meta(v),
            Formula::Var(v) => SchemaNode::Var(v.clone()),
            Formula::Zero => SchemaNode::Zero,
            Formula::One => SchemaNode::One,
            Formula::Const(c) => SchemaNode::Const(c.clone()),
            Formula::And(a, b) => SchemaNode::And(
                Box::new(Self::from_formula(a, metavars)),
                Box::new(Self::from_formula(b, metavars)),
            ),
            Formula::Or(a, b) => SchemaNode::Or(
                Box::new(Self::from_formula(a, metavars)),
                Box::new(Self::from_formula(b, metavars)),
            ),
            Formula::Fusion(a, b) => SchemaNode::Fusion(
                Box::new(Self::from_formula(a, metavars)),
                Box::new(Self::from_formula(b, metavars)),
            ),
            Formula::Implies(a, b) => SchemaNode::Implies(
                Box::new(Self::from_formula(a, metavars)),
                Box::new(Self::from_formula(b, metavars)),
            ),
            Formula::Box(a) => SchemaNode::Box(Box::new(Self::from_formula(a, metavars))),
            Formula::Diamond(a) => SchemaNode::Diamond(Box::new(Self::from_formula(a, metavars))),
        }
    }

    pub fn and(self, other: SchemaNode) -> SchemaNode {
        SchemaNode::And(Box::new(self), Box::new(other))
    }

    pub fn or(self, other: SchemaNode) -> SchemaNode {
        SchemaNode::Or(Box::new(self), Box::new(other))
    }

    pub fn fus(self, other: SchemaNode) -> SchemaNode {
        SchemaNode::Fusion(Box::new(self), Box::new(other))
    }

    pub fn implies(self, other: SchemaNode) -> SchemaNode {
        SchemaNode::Implies(Box::new(self), Box::new(other))
    }

    pub fn iff(self, other: SchemaNode) -> SchemaNode {
        self.clone()
            .implies(other.clone())
            .fus(other.implies(self))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(self) -> SchemaNode {
        SchemaNode::Implies(Box::new(self), Box::new(SchemaNode::Zero))
    }

    pub fn oplus(self, other: SchemaNode) -> SchemaNode {
        self.not().fus(other.not()).not()
    }

    pub fn boxed(self) -> SchemaNode {
        SchemaNode::Box(Box::new(self))
    }

    pub fn metavariables(&self) -> Vec<String> {
        let mut out = Vec::new();
        fn walk(s: &SchemaNode, out: &mut Vec<String>) {
            match s {
                SchemaNode::MetaFormula(m) => {
                    if !out.contains(m) {
                        out.push(m.clone());
                    }
                }
                SchemaNode::And(a, b)
                | SchemaNode::Or(a, b)
                | SchemaNode::Fusion(a, b)
                | SchemaNode::Implies(a, b) => {
                    walk(a, out);
                    walk(b, out);
                }
                SchemaNode::Box(a) | SchemaNode::Diamond(a) => walk(a, out),
                _ => {}
            }
        }
        walk(self, &mut out);
        out
    }
}

/// A named schema with its body.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Schema {
    pub name: String,
    pub body: SchemaNode,
}

impl Schema {
    pub fn new(name: &str, body: SchemaNode) -> Schema {
        Schema {
            name: name.to_string(),
            body,
        }
    }

    /// Instantiates with a substitution; element metavariables become
    /// canonical constants (or the 0/1 literals at the bounds).
    pub fn instantiate(&self, subst: &Substitution, alg: &ResiduatedLattice) -> Formula {
        instantiate_node(&self.body, subst, alg)
    }

    /// Instantiates formula metavariables only, in the order returned by
    /// `metavariables()`, from a list of formulas.
    pub fn instantiate_with(&self, formulas: &[Formula], alg: &ResiduatedLattice) -> Formula {
        let names = self.body.metavariables();
        assert_eq!(names.len(), formulas.len(), "arity mismatch for {}", self.name);
        let subst = Substitution {
            formulas: names.into_iter().zip(formulas.iter().cloned()).collect(),
            elements: BTreeMap::new(),
        };
        self.instantiate(&subst, alg)
    }
}

/// Result of a successful schema match.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Substitution {
    pub formulas: BTreeMap<String, Formula>,
    pub elements: BTreeMap<String, Element>,
}

pub fn element_to_formula(alg: &ResiduatedLattice, a: Element) -> Formula {
    if a == alg.bottom() {
        Formula::Zero
    } else if a == alg.top() {
        Formula::One
    } else {
        Formula::Const(alg.label(a).to_string())
    }
}

fn instantiate_node(s: &SchemaNode, subst: &Substitution, alg: &ResiduatedLattice) -> Formula {
    match s {
        SchemaNode::MetaFormula(m) => subst
            .formulas
            .get(m)
            .unwrap_or_else(|| panic!("unbound metavariable {m}"))
            .clone(),
        SchemaNode::MetaElement(m, _) => {
            let a = *subst
                .elements
                .get(m)
                .unwrap_or_else(|| panic!("unbound element metavariable {m}"));
            element_to_formula(alg, a)
        }
        SchemaNode::Var(v) => Formula::Var(v.clone()),
        SchemaNode::Zero => Formula::Zero,
        SchemaNode::One => Formula::One,
        SchemaNode::Const(c) => Formula::Const(c.clone()),
        SchemaNode::And(a, b) => {
            instantiate_node(a, subst, alg).and(instantiate_node(b, subst, alg))
        }
        SchemaNode::Or(a, b) => instantiate_node(a, subst, alg).or(instantiate_node(b, subst, alg)),
        SchemaNode::Fusion(a, b) => {
            instantiate_node(a, subst, alg).fus(instantiate_node(b, subst, alg))
        }
        SchemaNode::Implies(a, b) => {
            instantiate_node(a, subst, alg).implies(instantiate_node(b, subst, alg))
        }
        SchemaNode::Box(a) => instantiate_node(a, subst, alg).boxed(),
        SchemaNode::Diamond(a) => instantiate_node(a, subst, alg).diamond(),
    }
}

/// Matches a formula against a schema; on success the substitution is the
/// unique binding of metavariables to subtrees. Element side conditions
/// are checked against the classification of `alg`.
pub fn match_schema(
    formula: &Formula,
    schema: &Schema,
    alg: &ResiduatedLattice,
) -> Option<Substitution> {
    let mut subst = Substitution::default();
    if unify(&schema.body, formula, alg, &mut subst) {
        if subst.elements.is_empty() {
            return Some(subst);
        }
        let report = classify(alg);
        if check_conditions(&schema.body, alg, &report, &subst) {
            return Some(subst);
        }
    }
    None
}

fn check_conditions(
    s: &SchemaNode,
    alg: &ResiduatedLattice,
    report: &crate::algebra::AlgebraReport,
    subst: &Substitution,
) -> bool {
    match s {
        SchemaNode::MetaElement(m, cond) => {
            let a = subst.elements[m];
            match cond {
                ElementCond::Coatom => report.coatoms.contains(&a),
                ElementCond::Distributive => report.distributives.contains(&a),
                ElementCond::Boolean => report.booleans.contains(&a),
                _ => cond.holds(alg, a),
            }
        }
        SchemaNode::And(a, b)
        | SchemaNode::Or(a, b)
        | SchemaNode::Fusion(a, b)
        | SchemaNode::Implies(a, b) => {
            check_conditions(a, alg, report, subst) && check_conditions(b, alg, report, subst)
        }
        SchemaNode::Box(a) | SchemaNode::Diamond(a) => check_conditions(a, alg, report, subst),
        _ => true,
    }
}

fn unify(
    s: &SchemaNode,
    f: &Formula,
    alg: &ResiduatedLattice,
    subst: &mut Substitution,
) -> bool {
    match (s, f) {
        (SchemaNode::MetaFormula(m), _) => match subst.formulas.get(m) {
            Some(bound) => bound == f,
            None => {
                subst.formulas.insert(m.clone(), f.clone());
                true
            }
        },
        (SchemaNode::MetaElement(m, _), _) => {
            let elem = match f {
                Formula::Zero => Some(alg.bottom()),
                Formula::One => Some(alg.top()),
                Formula::Const(c) => alg.by_label(c).ok(),
                _ => None,
            };
            let Some(e) = elem else { return false };
            match subst.elements.get(m) {
                Some(&bound) => bound == e,
                None => {
                    subst.elements.insert(m.clone(), e);
                    true
                }
            }
        }
        (SchemaNode::Var(v), Formula::Var(w)) => v == w,
        (SchemaNode::Zero, Formula::Zero) => true,
        (SchemaNode::One, Formula::One) => true,
        (SchemaNode::Const(c), Formula::Const(d)) => c == d,
        (SchemaNode::And(a, b), Formula::And(x, y))
        | (SchemaNode::Or(a, b), Formula::Or(x, y))
        | (SchemaNode::Fusion(a, b), Formula::Fusion(x, y))
        | (SchemaNode::Implies(a, b), Formula::Implies(x, y)) => {
            unify(a, x, alg, subst) && unify(b, y, alg, subst)
        }
        (SchemaNode::Box(a), Formula::Box(x)) | (SchemaNode::Diamond(a), Formula::Diamond(x)) => {
            unify(a, x, alg, subst)
        }
        _ => false,
    }
}
