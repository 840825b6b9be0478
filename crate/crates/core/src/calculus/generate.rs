//! Book-keeping and witnessing axiom generation, and the bounded
//! soundness probe for calculi.

use super::{CalcError, Calculus};
use crate::algebra::ResiduatedLattice;
use crate::formula::{element_to_formula, Formula, Schema, SchemaNode};
use crate::search::{validity_search, SearchBudget, SearchError, Verdict};
use crate::semantics::FrameClass;

/// `(ā ∗ b̄) ↔ (a∗b)‾` for all a, b and ∗ ∈ {∧, ∨, ⊙, →}; 4·|A|²
/// formulas. Constants at the bounds are the literals 0 and 1.
pub fn generate_bookkeeping(alg: &ResiduatedLattice) -> Vec<Formula> {
    let mut out = Vec::new();
    for a in alg.elements() {
        for b in alg.elements() {
            let fa = element_to_formula(alg, a);
            let fb = element_to_formula(alg, b);
            let ops: [(Formula, crate::algebra::Element); 4] = [
                (fa.clone().and(fb.clone()), alg.meet(a, b)),
                (fa.clone().or(fb.clone()), alg.join(a, b)),
                (fa.clone().fus(fb.clone()), alg.fus(a, b)),
                (fa.clone().implies(fb.clone()), alg.res(a, b)),
            ];
            for (lhs, value) in ops {
                out.push(lhs.iff(element_to_formula(alg, value)));
            }
        }
    }
    out
}

/// `⋁_{a∈A} (p ↔ ā)`, joined in element order.
pub fn generate_witnessing(alg: &ResiduatedLattice) -> Formula {
    let p = Formula::var("p");
    alg.elements()
        .map(|a| p.clone().iff(element_to_formula(alg, a)))
        .reduce(|x, y| x.or(y))
        .expect("nonempty universe")
}

pub(crate) fn bookkeeping_schemas(alg: &ResiduatedLattice) -> Vec<Schema> {
    generate_bookkeeping(alg)
        .into_iter()
        .enumerate()
        .map(|(i, f)| Schema::new(&format!("BK{i}"), SchemaNode::from_formula(&f, &[])))
        .collect()
}

pub(crate) fn witnessing_schema(alg: &ResiduatedLattice) -> Schema {
    let w = generate_witnessing(alg);
    // p is schematic in the witnessing axiom
    Schema::new("Witness", SchemaNode::from_formula(&w, &["p"]))
}

/// Result of probing one formula.
#[derive(Debug, Clone)]
pub struct ProbeItem {
    pub name: String,
    pub formula: Formula,
    pub verdict: Verdict,
}

#[derive(Debug, Clone)]
pub struct ProbeReport {
    pub items: Vec<ProbeItem>,
}

impl ProbeReport {
    pub fn refuted(&self) -> Vec<&ProbeItem> {
        self.items
            .iter()
            .filter(|i| i.verdict.is_refuted())
            .collect()
    }

    pub fn all_sound(&self) -> bool {
        self.refuted().is_empty()
    }
}

/// Bounded-validates every axiom of the calculus (schemas instantiated
/// with distinct fresh variables) plus the given extra theorems over the
/// intended frame class. Any refutation is a soundness violation.
pub fn soundness_probe(
    calc: &Calculus,
    class: FrameClass,
    extra_theorems: &[(String, Formula)],
    budget: &SearchBudget,
) -> Result<ProbeReport, CalcError> {
    if calc.base == super::NonModalBase::None {
        return Err(CalcError::PrerequisiteFails(
            "soundness probing is disabled for syntax-only presets".into(),
        ));
    }
    let mut items = Vec::new();
    let fresh = ["p", "q", "r", "s", "t"];
    for schema in &calc.axioms {
        let metas = schema.body.metavariables();
        assert!(metas.len() <= fresh.len(), "axiom with too many metavariables");
        let formulas: Vec<Formula> = metas
            .iter()
            .enumerate()
            .map(|(i, _)| Formula::var(fresh[i]))
            .collect();
        let instance = schema.instantiate_with(&formulas, &calc.algebra);
        let verdict = validity_search(&calc.algebra, class, &instance, budget)
            .map_err(|e: SearchError| CalcError::PrerequisiteFails(e.to_string()))?;
        items.push(ProbeItem {
            name: schema.name.clone(),
            formula: instance,
            verdict,
        });
    }
    for (name, f) in extra_theorems {
        let verdict = validity_search(&calc.algebra, class, f, budget)
            .map_err(|e: SearchError| CalcError::PrerequisiteFails(e.to_string()))?;
        items.push(ProbeItem {
            name: name.clone(),
            formula: f.clone(),
            verdict,
        });
    }
    Ok(ProbeReport { items })
}
