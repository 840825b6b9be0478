//! Term functions of non-modal terms over a finite algebra, with
//! exhaustive monotonicity / expansion checks.

use super::{Element, ResiduatedLattice};
use crate::formula::Formula;
use crate::search::eval_nonmodal_total;
use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TermProperties {
    /// Non-decreasing in each argument position.
    pub nondecreasing: Vec<bool>,
    /// `x ≤ t(x, …, x)`, meaningful for unary terms; for higher arities
    /// checked on the diagonal.
    pub expanding: bool,
}

/// Tabulates a non-modal term as a function of its variables (sorted by
/// name). Panics if `t` is modal; callers check that first.
pub fn term_function(alg: &ResiduatedLattice, t: &Formula) -> (Vec<String>, Vec<Element>) {
    assert!(!t.is_modal(), "term_function expects a non-modal term");
    let vars: Vec<String> = t.variables().into_iter().collect();
    let n = alg.size();
    let k = vars.len();
    let total = n.pow(k as u32);
    let mut table = Vec::with_capacity(total);
    let mut env: BTreeMap<String, Element> = BTreeMap::new();
    for code in 0..total {
        let mut c = code;
        // last variable varies fastest
        for i in (0..k).rev() {
            env.insert(vars[i].clone(), Element(c % n));
            c /= n;
        }
        table.push(eval_nonmodal_total(alg, t, &env));
    }
    (vars, table)
}

pub fn term_properties(alg: &ResiduatedLattice, t: &Formula) -> TermProperties {
    let (vars, table) = term_function(alg, t);
    let n = alg.size();
    let k = vars.len();
    let stride = |i: usize| n.pow((k - 1 - i) as u32);
    let nondecreasing = (0..k)
        .map(|i| {
            let s = stride(i);
            (0..table.len()).all(|code| {
                let digit = (code / s) % n;
                // raising argument i along the order must not decrease
                // the value, with all other arguments fixed
                (0..n).all(|other| {
                    if !alg.leq(Element(digit), Element(other)) {
                        return true;
                    }
                    let code2 = code - digit * s + other * s;
                    alg.leq(table[code], table[code2])
                })
            })
        })
        .collect();
    let expanding = alg.elements().all(|x| {
        let env: BTreeMap<String, Element> =
            vars.iter().map(|v| (v.clone(), x)).collect();
        alg.leq(x, eval_nonmodal_total(alg, t, &env))
    });
    TermProperties {
        nondecreasing,
        expanding,
    }
}
