//! Exact non-modal consequence over a finite algebra by exhaustive
//! assignment enumeration, plus box abstraction (boxed subformulas read
//! as propositional variables).

use crate::algebra::{Element, ResiduatedLattice};
use crate::formula::Formula;
use std::collections::BTreeMap;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NonModalError {
    #[error("expected a non-modal formula (box abstraction is disabled)")]
    NonModalExpected,
    #[error("unknown constant `@{0}`")]
    UnknownConstant(String),
}

/// Evaluates a non-modal formula under a complete assignment. Missing
/// variables and unknown constants panic; use `eval_nonmodal` for the
/// checked version.
pub fn eval_nonmodal_total(
    alg: &ResiduatedLattice,
    f: &Formula,
    env: &BTreeMap<String, Element>,
) -> Element {
    eval_nonmodal(alg, f, env).expect("total evaluation failed")
}

pub fn eval_nonmodal(
    alg: &ResiduatedLattice,
    f: &Formula,
    env: &BTreeMap<String, Element>,
) -> Result<Element, NonModalError> {
    Ok(match f {
        Formula::Var(v) => *env
            .get(v)
            .unwrap_or_else(|| panic!("unbound variable {v} in non-modal evaluation")),
        Formula::Zero => alg.bottom(),
        Formula::One => alg.top(),
        Formula::Const(c) => alg
            .by_label(c)
            .map_err(|_| NonModalError::UnknownConstant(c.clone()))?,
        Formula::And(a, b) => alg.meet(eval_nonmodal(alg, a, env)?, eval_nonmodal(alg, b, env)?),
        Formula::Or(a, b) => alg.join(eval_nonmodal(alg, a, env)?, eval_nonmodal(alg, b, env)?),
        Formula::Fusion(a, b) => {
            alg.fus(eval_nonmodal(alg, a, env)?, eval_nonmodal(alg, b, env)?)
        }
        Formula::Implies(a, b) => {
            alg.res(eval_nonmodal(alg, a, env)?, eval_nonmodal(alg, b, env)?)
        }
        Formula::Box(_) | Formula::Diamond(_) => return Err(NonModalError::NonModalExpected),
    })
}

/// Evaluates a one-variable term at a point (every variable maps to `x`).
pub fn eval_unary(alg: &ResiduatedLattice, f: &Formula, x: Element) -> Element {
    let env: BTreeMap<String, Element> =
        f.variables().into_iter().map(|v| (v, x)).collect();
    eval_nonmodal_total(alg, f, &env)
}

/// Replaces every maximal boxed subformula with a fresh variable, so a
/// modal formula can be fed to the propositional oracle. Identical boxed
/// subformulas share their variable.
pub fn box_abstract(f: &Formula) -> Formula {
    let mut seen: Vec<Formula> = Vec::new();
    fn walk(f: &Formula, seen: &mut Vec<Formula>) -> Formula {
        match f {
            Formula::Box(_) | Formula::Diamond(_) => {
                let idx = match seen.iter().position(|g| g == f) {
                    Some(i) => i,
                    None => {
                        seen.push(f.clone());
                        seen.len() - 1
                    }
                };
                Formula::Var(format!("$b{idx}"))
            }
            Formula::Var(_) | Formula::Zero | Formula::One | Formula::Const(_) => f.clone(),
            Formula::And(a, b) => walk(a, seen).and(walk(b, seen)),
            Formula::Or(a, b) => walk(a, seen).or(walk(b, seen)),
            Formula::Fusion(a, b) => walk(a, seen).fus(walk(b, seen)),
            Formula::Implies(a, b) => walk(a, seen).implies(walk(b, seen)),
        }
    }
    walk(f, &mut seen)
}

/// Exact non-modal consequence: `Γ ⊢_A φ` iff every assignment sending Γ
/// to 1 sends φ to 1. With `abstract_boxes`, boxed subformulas are first
/// replaced by fresh propositional variables; otherwise modal input is an
/// error. Returns the verdict and, when it fails, the first refuting
/// assignment in canonical order (variables sorted, last varying fastest).
pub fn nonmodal_consequence(
    alg: &ResiduatedLattice,
    gamma: &[Formula],
    phi: &Formula,
    abstract_boxes: bool,
) -> Result<(bool, Option<BTreeMap<String, Element>>), NonModalError> {
    let (gamma, phi): (Vec<Formula>, Formula) = if abstract_boxes {
        // abstract premises and conclusion together so shared boxed
        // subformulas get the same variable
        let mut all: Vec<Formula> = gamma.to_vec();
        all.push(phi.clone());
        let joined = all
            .into_iter()
            .reduce(|a, b| a.and(b))
            .expect("nonempty list");
        let abstracted = box_abstract(&joined);
        let mut parts = Vec::new();
        let mut cur = abstracted;
        for _ in 0..gamma.len() {
            if let Formula::And(a, b) = cur {
                parts.push(*a);
                cur = *b;
            } else {
                unreachable!("abstraction preserves shape");
            }
        }
        (parts, cur)
    } else {
        if gamma.iter().any(|g| g.is_modal()) || phi.is_modal() {
            return Err(NonModalError::NonModalExpected);
        }
        (gamma.to_vec(), phi.clone())
    };

    let mut vars: Vec<String> = phi.variables().into_iter().collect();
    for g in &gamma {
        for v in g.variables() {
            if !vars.contains(&v) {
                vars.push(v);
            }
        }
    }
    vars.sort();
    let n = alg.size();
    let total = n.checked_pow(vars.len() as u32).expect("assignment space overflow");
    let mut env: BTreeMap<String, Element> = BTreeMap::new();
    for code in 0..total {
        let mut c = code;
        for v in vars.iter().rev() {
            env.insert(v.clone(), Element(c % n));
            c /= n;
        }
        let premises_hold = gamma
            .iter()
            .map(|g| eval_nonmodal(alg, g, &env))
            .collect::<Result<Vec<_>, _>>()?
            .into_iter()
            .all(|v| v == alg.top());
        if premises_hold && eval_nonmodal(alg, &phi, &env)? != alg.top() {
            return Ok((false, Some(env)));
        }
    }
    Ok((true, None))
}
