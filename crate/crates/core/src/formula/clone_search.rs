//! Closure search over unary term functions, and synthesis of the
//! characterizing formulas η_a on finite MV chains.

use super::Formula;
use crate::algebra::{classify, Element, ResiduatedLattice};
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EtaError {
    #[error("characterizing formulas are only synthesized for finite MV chains")]
    NotMVChain,
    #[error("no characterizing term found for {0} (this should not happen on an MV chain)")]
    NotFound(String),
}

/// A unary function table together with one witnessing one-variable term.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CloneEntry {
    pub table: Vec<Element>,
    pub witness: Formula,
}

/// Least set of unary functions containing the identity and the constants
/// 0 and 1, closed under pointwise ∧, ∨, ⊙, → and composition. The
/// fixpoint is reached within |A|^|A| functions. Entries are sorted by
/// table for determinism.
pub fn unary_term_clone(alg: &ResiduatedLattice) -> Vec<CloneEntry> {
    let n = alg.size();
    let p = Formula::var("p");
    let mut entries: BTreeMap<Vec<Element>, Formula> = BTreeMap::new();
    let id: Vec<Element> = alg.elements().collect();
    entries.insert(id, p.clone());
    entries.insert(vec![alg.bottom(); n], Formula::Zero);
    entries.insert(vec![alg.top(); n], Formula::One);
    loop {
        let snapshot: Vec<(Vec<Element>, Formula)> =
            entries.iter().map(|(t, w)| (t.clone(), w.clone())).collect();
        let mut changed = false;
        let add = |table: Vec<Element>,
                   witness: Formula,
                   entries: &mut BTreeMap<Vec<Element>, Formula>| {
            match entries.entry(table) {
                std::collections::btree_map::Entry::Vacant(slot) => {
                    slot.insert(witness);
                    true
                }
                std::collections::btree_map::Entry::Occupied(_) => false,
            }
        };
        type PointwiseOp = (
            fn(&ResiduatedLattice, Element, Element) -> Element,
            fn(Formula, Formula) -> Formula,
        );
        for (t1, w1) in &snapshot {
            for (t2, w2) in &snapshot {
                let ops: [PointwiseOp; 4] = [
                    (|a, x, y| a.meet(x, y), |f, g| f.and(g)),
                    (|a, x, y| a.join(x, y), |f, g| f.or(g)),
                    (|a, x, y| a.fus(x, y), |f, g| f.fus(g)),
                    (|a, x, y| a.res(x, y), |f, g| f.implies(g)),
                ];
                for (ef, wf) in ops {
                    let table: Vec<Element> =
                        (0..n).map(|i| ef(alg, t1[i], t2[i])).collect();
                    changed |= add(table, wf(w1.clone(), w2.clone()), &mut entries);
                }
                // composition t1 ∘ t2
                let table: Vec<Element> = (0..n).map(|i| t1[t2[i].0]).collect();
                let witness = {
                    let mut s = BTreeMap::new();
                    s.insert("p".to_string(), w2.clone());
                    w1.substitute(&s)
                };
                changed |= add(table, witness, &mut entries);
            }
        }
        if !changed {
            break;
        }
    }
    entries
        .into_iter()
        .map(|(table, witness)| CloneEntry { table, witness })
        .collect()
}

fn tau1(f: Formula) -> Formula {
    f.clone().fus(f)
}

fn tau2(f: Formula) -> Formula {
    f.clone().oplus(f)
}

fn apply_tau1(alg: &ResiduatedLattice, x: Element) -> Element {
    alg.fus(x, x)
}

fn apply_tau2(alg: &ResiduatedLattice, x: Element) -> Element {
    alg.oplus(x, x)
}

/// Synthesizes the strongly characterizing formula η_a of the interval
/// [a, 1] over a finite MV chain: `η_a(x) = 1 iff x ≥ a` and η_a only
/// takes values in {0, 1}. η_0 is the constant 1; other η's are found by
/// breadth-first search over compositions of τ1(p) = p⊙p and
/// τ2(p) = p⊕p (deterministic: by term size, τ1 before τ2), falling back
/// to the unary clone if no composition exists.
pub fn characterizing_formula(
    alg: &ResiduatedLattice,
    a: Element,
) -> Result<Formula, EtaError> {
    let report = classify(alg);
    if !(report.is_mv && report.is_chain) {
        return Err(EtaError::NotMVChain);
    }
    if a == alg.bottom() {
        return Ok(Formula::One);
    }
    let n = alg.size();
    let target: Vec<Element> = alg
        .elements()
        .map(|x| if alg.leq(a, x) { alg.top() } else { alg.bottom() })
        .collect();
    // BFS over words in {τ1, τ2}*, the identity word included.
    let id: Vec<Element> = alg.elements().collect();
    let mut frontier: Vec<(Vec<Element>, Formula)> = vec![(id, Formula::var("p"))];
    let mut seen: Vec<Vec<Element>> = frontier.iter().map(|(t, _)| t.clone()).collect();
    for _ in 0..=(n * n) {
        for (table, term) in &frontier {
            if *table == target {
                return Ok(term.clone());
            }
        }
        let mut next = Vec::new();
        for (table, term) in &frontier {
            let candidates = [
                (
                    (0..n).map(|i| apply_tau1(alg, table[i])).collect::<Vec<_>>(),
                    tau1(term.clone()),
                ),
                (
                    (0..n).map(|i| apply_tau2(alg, table[i])).collect::<Vec<_>>(),
                    tau2(term.clone()),
                ),
            ];
            for (t, w) in candidates {
                if !seen.contains(&t) {
                    seen.push(t.clone());
                    next.push((t, w));
                }
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    // Fall back to the general clone.
    for entry in unary_term_clone(alg) {
        if entry.table == target {
            return Ok(entry.witness);
        }
    }
    Err(EtaError::NotFound(alg.label(a).to_string()))
}

/// Checks (4.1) + (4.2): η is the characteristic function of [a, 1].
pub fn is_characterizing(alg: &ResiduatedLattice, a: Element, eta: &Formula) -> bool {
    alg.elements().all(|x| {
        let v = crate::search::eval_unary(alg, eta, x);
        let expected = if alg.leq(a, x) { alg.top() } else { alg.bottom() };
        v == expected
    })
}
