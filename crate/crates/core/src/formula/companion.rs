//! The non-modal companion translation and the standard translation
//! printer for the first-order reading of modal formulas.

use super::{Formula, FormulaError};
use std::collections::BTreeMap;

/// Reserved companion variable for modal degree `n`.
pub fn companion_var(n: usize) -> String {
    format!("$r{n}")
}

fn is_reserved(name: &str) -> bool {
    name.strip_prefix("$r")
        .is_some_and(|rest| !rest.is_empty() && rest.bytes().all(|c| c.is_ascii_digit()))
}

/// Non-modal companion: every subformula `□ψ` of modal degree `n` becomes
/// `$rn → ψ'`. Formulas with `◇` are rejected. Variables already in the
/// reserved `$rN` namespace are renamed to `$rN_u` first.
pub fn companion(f: &Formula) -> Result<Formula, FormulaError> {
    if f.has_diamond() {
        return Err(FormulaError::DiamondUnsupported);
    }
    let clashes: Vec<String> = f
        .variables()
        .into_iter()
        .filter(|v| is_reserved(v))
        .collect();
    let renamed = if clashes.is_empty() {
        f.clone()
    } else {
        let subst: BTreeMap<String, Formula> = clashes
            .into_iter()
            .map(|v| {
                let fresh = format!("{v}_u");
                (v, Formula::Var(fresh))
            })
            .collect();
        f.substitute(&subst)
    };
    Ok(translate(&renamed))
}

fn translate(f: &Formula) -> Formula {
    match f {
        Formula::Box(a) => {
            let degree = a.modal_depth();
            Formula::Var(companion_var(degree)).implies(translate(a))
        }
        Formula::Var(_) | Formula::Zero | Formula::One | Formula::Const(_) => f.clone(),
        Formula::And(a, b) => translate(a).and(translate(b)),
        Formula::Or(a, b) => translate(a).or(translate(b)),
        Formula::Fusion(a, b) => translate(a).fus(translate(b)),
        Formula::Implies(a, b) => translate(a).implies(translate(b)),
        Formula::Diamond(_) => unreachable!("rejected above"),
    }
}

/// Prints the standard translation with the given free world variable:
/// propositional variables become unary predicates, `□` a guarded `∀`,
/// `◇` a guarded `∃` with fusion. Printer only; there is no first-order
/// semantics behind it.
pub fn standard_translation(f: &Formula, free_var: &str) -> String {
    let mut fresh = FreshVars::new(free_var);
    st(f, free_var, &mut fresh)
}

struct FreshVars {
    used: Vec<String>,
    counter: usize,
}

impl FreshVars {
    fn new(free: &str) -> Self {
        FreshVars {
            used: vec![free.to_string()],
            counter: 0,
        }
    }

    fn next(&mut self) -> String {
        const POOL: [&str; 6] = ["y", "z", "u", "v", "s", "t"];
        for cand in POOL {
            if !self.used.iter().any(|u| u == cand) {
                self.used.push(cand.to_string());
                return cand.to_string();
            }
        }
        loop {
            self.counter += 1;
            let cand = format!("y{}", self.counter);
            if !self.used.iter().any(|u| u == &cand) {
                self.used.push(cand.clone());
                return cand;
            }
        }
    }

    fn release(&mut self, v: &str) {
        if let Some(p) = self.used.iter().position(|u| u == v) {
            self.used.remove(p);
        }
    }
}

fn predicate_name(var: &str) -> String {
    let mut chars = var.chars();
    match chars.next() {
        Some(c) => format!("{}{}", c.to_ascii_uppercase(), chars.as_str()),
        None => String::new(),
    }
}

fn st(f: &Formula, world: &str, fresh: &mut FreshVars) -> String {
    match f {
        Formula::Var(v) => format!("{}{}", predicate_name(v), world),
        Formula::Zero => "0".to_string(),
        Formula::One => "1".to_string(),
        Formula::Const(c) => format!("@{c}"),
        Formula::And(a, b) => format!("({} ∧ {})", st(a, world, fresh), st(b, world, fresh)),
        Formula::Or(a, b) => format!("({} ∨ {})", st(a, world, fresh), st(b, world, fresh)),
        Formula::Fusion(a, b) => format!("({} ⊙ {})", st(a, world, fresh), st(b, world, fresh)),
        Formula::Implies(a, b) => format!("({} → {})", st(a, world, fresh), st(b, world, fresh)),
        Formula::Box(a) => {
            let y = fresh.next();
            let body = st(a, &y, fresh);
            fresh.release(&y);
            format!("∀{y}(R{world}{y} → {body})")
        }
        Formula::Diamond(a) => {
            let y = fresh.next();
            let body = st(a, &y, fresh);
            fresh.release(&y);
            format!("∃{y}(R{world}{y} ⊙ {body})")
        }
    }
}
