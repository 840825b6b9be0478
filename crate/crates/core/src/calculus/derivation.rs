//! Checkable Hilbert-style derivations.
//!
//! File format:
//!
//! ```text
//! calculus: table5(lukasiewicz(3))
//! 1: ((p + p) /\ (q * q)) -> ((p * q) + (p * q)) ; nmtaut
//! 2: (([]p + []p) /\ ([]q * []q)) -> ([](p * q) + [](p * q)) ; rule R_0.5 1
//! ```
//!
//! Justifications: `assume`, `axiom <name>`, `nmtaut`, `mp i j` (step i
//! is φ, step j is φ→ψ), `nec i`, `mon i`, `rule <name> i1 i2 …`.

use super::{CalcError, Calculus, CalculusPreset, NonModalBase};
use crate::algebra::{preset, Element};
use crate::formula::{match_schema, parse, Formula, Schema, SchemaNode};
use crate::search::{box_abstract, nonmodal_consequence};
use std::collections::BTreeMap;
use std::sync::Arc;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Justification {
    Assumption,
    Axiom(String),
    NonModalTautology,
    /// `MP(i, j)`: step i is φ, step j is φ→current.
    ModusPonens(usize, usize),
    Necessitation(usize),
    Monotonicity(usize),
    RuleApp(String, Vec<usize>),
}

#[derive(Debug, Clone)]
pub struct Step {
    pub formula: Formula,
    pub justification: Justification,
}

#[derive(Debug, Clone)]
pub struct Derivation {
    pub steps: Vec<Step>,
}

impl Derivation {
    pub fn conclusion(&self) -> Option<&Formula> {
        self.steps.last().map(|s| &s.formula)
    }

    pub fn assumptions(&self) -> Vec<&Formula> {
        self.steps
            .iter()
            .filter(|s| s.justification == Justification::Assumption)
            .map(|s| &s.formula)
            .collect()
    }
}

/// Verifies every step; returns the first invalid step (1-based) with a
/// reason.
pub fn check_derivation(calc: &Calculus, derivation: &Derivation) -> Result<(), CalcError> {
    for (idx, step) in derivation.steps.iter().enumerate() {
        let n = idx + 1;
        let fail = |reason: String| CalcError::InvalidStep { step: n, reason };
        let earlier = |i: usize| -> Result<&Formula, CalcError> {
            if i == 0 || i > idx {
                return Err(CalcError::InvalidStep {
                    step: n,
                    reason: format!("premise index {i} is not strictly earlier"),
                });
            }
            Ok(&derivation.steps[i - 1].formula)
        };
        if !calc.constants && step.formula.has_constants() {
            return Err(fail("canonical constants are not in this language".into()));
        }
        match &step.justification {
            Justification::Assumption => {}
            Justification::Axiom(name) => {
                let schema = calc
                    .axiom(name)
                    .ok_or_else(|| CalcError::UnknownSchema(name.clone()))?;
                if match_schema(&step.formula, schema, &calc.algebra).is_none() {
                    return Err(fail(format!("formula is not an instance of axiom {name}")));
                }
            }
            Justification::NonModalTautology => {
                if calc.base != NonModalBase::Oracle {
                    return Err(fail(
                        "this calculus has no non-modal oracle (syntax-only preset)".into(),
                    ));
                }
                let abstracted = box_abstract(&step.formula);
                let (holds, witness) = nonmodal_consequence(&calc.algebra, &[], &abstracted, false)
                    .map_err(|e| fail(e.to_string()))?;
                if !holds {
                    let env = witness.expect("failing oracle carries an assignment");
                    let desc: Vec<String> = env
                        .iter()
                        .map(|(v, e)| format!("{v}={}", calc.algebra.label(*e)))
                        .collect();
                    return Err(fail(format!(
                        "not a tautology of the non-modal base (refuted at {})",
                        desc.join(", ")
                    )));
                }
            }
            Justification::ModusPonens(i, j) => {
                if !calc.structural.modus_ponens {
                    return Err(fail("this calculus has no Modus Ponens".into()));
                }
                let minor = earlier(*i)?;
                let major = earlier(*j)?;
                let expected = minor.clone().implies(step.formula.clone());
                if *major != expected {
                    return Err(fail(format!(
                        "step {j} is not `{}`",
                        expected
                    )));
                }
            }
            Justification::Necessitation(i) => {
                if !calc.structural.necessity {
                    return Err(fail("this calculus has no Necessity rule".into()));
                }
                let prem = earlier(*i)?;
                if step.formula != prem.clone().boxed() {
                    return Err(fail("formula is not the boxing of the premise".into()));
                }
            }
            Justification::Monotonicity(i) => {
                if !calc.structural.monotonicity {
                    return Err(fail("this calculus has no Monotonicity rule".into()));
                }
                let prem = earlier(*i)?;
                let Formula::Implies(a, b) = prem else {
                    return Err(fail("premise of Mon must be an implication".into()));
                };
                let expected = a.clone().boxed().implies(b.clone().boxed());
                if step.formula != expected {
                    return Err(fail(format!("expected `{expected}`")));
                }
            }
            Justification::RuleApp(name, indices) => {
                let rule = calc
                    .rule(name)
                    .ok_or_else(|| CalcError::UnknownRule(name.clone()))?;
                let premises: Vec<&Formula> = indices
                    .iter()
                    .map(|&i| earlier(i))
                    .collect::<Result<_, _>>()?;
                // Direct match against the stored schemas first; fall back
                // to the generalized element-indexed form for R_a rules.
                let direct = check_rule_direct(calc, rule, &premises, &step.formula);
                if let Err(direct_err) = direct {
                    if name.starts_with("R_") {
                        check_rule_ra_generalized(calc, name, &premises, &step.formula)
                            .map_err(&fail)?;
                    } else {
                        return Err(fail(direct_err));
                    }
                }
            }
        }
    }
    Ok(())
}

fn check_rule_direct(
    calc: &Calculus,
    rule: &super::Rule,
    premises: &[&Formula],
    conclusion: &Formula,
) -> Result<(), String> {
    let Some(subst) = match_schema(conclusion, &rule.conclusion, &calc.algebra) else {
        return Err(format!(
            "formula is not an instance of the conclusion of {}",
            rule.name
        ));
    };
    if premises.len() != rule.premises.len() {
        return Err(format!(
            "rule {} needs {} premises, got {}",
            rule.name,
            rule.premises.len(),
            premises.len()
        ));
    }
    for (schema, actual) in rule.premises.iter().zip(premises) {
        let expected = schema.instantiate(&subst, &calc.algebra);
        if expected != **actual {
            return Err(format!("premise mismatch: expected `{expected}`"));
        }
    }
    Ok(())
}

/// Generalized (R_a^{c1…cm}) check: the conclusion is decomposed as
/// `(η_{c1}(□ψ1) ∧ … ∧ η_{cm}(□ψm)) → η_a(□ψ)` for nonzero c_j, and for
/// every b > ¬a (ascending) the cited premise must be
/// `(η_{c1⊙b}(ψ1) ∧ … ∧ η_{cm⊙b}(ψm)) → η_{a⊙b}(ψ)`.
fn check_rule_ra_generalized(
    calc: &Calculus,
    rule_name: &str,
    premises: &[&Formula],
    conclusion: &Formula,
) -> Result<(), String> {
    let alg = &calc.algebra;
    let a_label = rule_name
        .strip_prefix("R_")
        .ok_or_else(|| format!("not an R rule: {rule_name}"))?;
    let a = alg
        .by_label(a_label)
        .map_err(|_| format!("unknown element in rule name {rule_name}"))?;
    let Formula::Implies(lhs, rhs) = conclusion else {
        return Err("conclusion of an R rule must be an implication".into());
    };
    // rhs = η_a(□ψ)
    let psi = match match_eta_boxed(alg, a, rhs) {
        Some(p) => p,
        None => return Err(format!("right side is not η_{a_label}(□ψ)")),
    };
    // lhs = conjunction of η_{c_j}(□ψ_j)
    let parts = flatten_conjunction(lhs);
    let mut decomposed: Vec<(Element, Formula)> = Vec::new();
    for part in &parts {
        let mut found = None;
        for c in alg.elements().filter(|&c| c != alg.bottom()) {
            if let Some(p) = match_eta_boxed(alg, c, part) {
                found = Some((c, p));
                break;
            }
        }
        match found {
            Some(x) => decomposed.push(x),
            None => return Err(format!("conjunct `{part}` is not η_c(□ψ) for any c ≠ 0")),
        }
    }
    let bs: Vec<Element> = alg.elements().filter(|&b| alg.lt(alg.neg(a), b)).collect();
    if premises.len() != bs.len() {
        return Err(format!(
            "rule {rule_name} needs {} premises (one per b > ¬{a_label}), got {}",
            bs.len(),
            premises.len()
        ));
    }
    for (&b, actual) in bs.iter().zip(premises) {
        let conjuncts: Vec<Formula> = decomposed
            .iter()
            .map(|(c, psi_j)| eta_applied(alg, alg.fus(*c, b), psi_j))
            .collect();
        let head = conjuncts
            .into_iter()
            .reduce(|x, y| x.and(y))
            .expect("nonempty conjunction");
        let expected = head.implies(eta_applied(alg, alg.fus(a, b), &psi));
        if expected != **actual {
            return Err(format!(
                "premise for b = {} should be `{expected}`",
                alg.label(b)
            ));
        }
    }
    Ok(())
}

fn flatten_conjunction(f: &Formula) -> Vec<&Formula> {
    match f {
        Formula::And(a, b) => {
            let mut v = flatten_conjunction(a);
            v.push(b);
            v
        }
        _ => vec![f],
    }
}

/// η_value applied to a concrete formula; η_0 is the literal 1.
fn eta_applied(alg: &crate::algebra::ResiduatedLattice, value: Element, inner: &Formula) -> Formula {
    if value == alg.bottom() {
        return Formula::One;
    }
    let eta = crate::formula::characterizing_formula(alg, value).expect("eta exists");
    let mut s = BTreeMap::new();
    for v in eta.variables() {
        s.insert(v, inner.clone());
    }
    eta.substitute(&s)
}

/// Matches `f = η_c(□ψ)` and returns ψ.
fn match_eta_boxed(
    alg: &crate::algebra::ResiduatedLattice,
    c: Element,
    f: &Formula,
) -> Option<Formula> {
    let eta = crate::formula::characterizing_formula(alg, c).ok()?;
    let schema_body = {
        let vars: Vec<String> = eta.variables().into_iter().collect();
        let mut s = BTreeMap::new();
        for v in vars {
            s.insert(v, Formula::Var("p".to_string()));
        }
        SchemaNode::from_formula(&eta.substitute(&s), &["p"])
    };
    let schema = Schema::new("eta", schema_body);
    let subst = match_schema(f, &schema, alg)?;
    let bound = subst.formulas.get("p")?;
    match bound {
        Formula::Box(inner) => Some((**inner).clone()),
        _ => None,
    }
}

/// Parses a derivation file; the header names the calculus preset and its
/// algebra, e.g. `calculus: table3(lukasiewicz(3))`.
pub fn parse_derivation_file(text: &str) -> Result<(Calculus, Derivation), CalcError> {
    let mut calc: Option<Calculus> = None;
    let mut steps: Vec<(usize, Step)> = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fail = |msg: String| CalcError::File(format!("line {}: {}", lineno + 1, msg));
        if let Some(rest) = line.strip_prefix("calculus:") {
            let spec = rest.trim();
            let open = spec
                .find('(')
                .ok_or_else(|| fail("expected `preset(algebra)`".into()))?;
            if !spec.ends_with(')') {
                return Err(fail("expected `preset(algebra)`".into()));
            }
            let preset_name = &spec[..open];
            let algebra_spec = &spec[open + 1..spec.len() - 1];
            let p = CalculusPreset::parse(preset_name)
                .ok_or_else(|| fail(format!("unknown calculus preset `{preset_name}`")))?;
            let alg = preset(algebra_spec).map_err(|e| fail(e.to_string()))?;
            calc = Some(super::preset_calculus(p, Arc::new(alg), p.constants())?);
        } else {
            let calc_ref = calc
                .as_ref()
                .ok_or_else(|| fail("derivation steps before `calculus:` line".into()))?;
            let (num, rest) = line
                .split_once(':')
                .ok_or_else(|| fail("expected `n: formula ; justification`".into()))?;
            let num: usize = num
                .trim()
                .parse()
                .map_err(|_| fail(format!("bad step number `{num}`")))?;
            let (formula_text, just_text) = rest
                .rsplit_once(';')
                .ok_or_else(|| fail("expected `; justification`".into()))?;
            let formula = parse(formula_text.trim(), calc_ref.constants)
                .map_err(|e| fail(e.to_string()))?;
            let justification = parse_justification(just_text.trim()).map_err(fail)?;
            steps.push((
                num,
                Step {
                    formula,
                    justification,
                },
            ));
        }
    }
    let calc = calc.ok_or_else(|| CalcError::File("missing `calculus:` line".into()))?;
    steps.sort_by_key(|(n, _)| *n);
    for (i, (n, _)) in steps.iter().enumerate() {
        if *n != i + 1 {
            return Err(CalcError::File(format!(
                "steps must be numbered 1..{}, found {}",
                steps.len(),
                n
            )));
        }
    }
    Ok((
        calc,
        Derivation {
            steps: steps.into_iter().map(|(_, s)| s).collect(),
        },
    ))
}

fn parse_justification(text: &str) -> Result<Justification, String> {
    let mut parts = text.split_whitespace();
    let head = parts.next().ok_or("empty justification")?;
    let nat = |s: Option<&str>| -> Result<usize, String> {
        s.ok_or("missing index")?
            .parse()
            .map_err(|_| "bad index".to_string())
    };
    match head {
        "assume" => Ok(Justification::Assumption),
        "axiom" => Ok(Justification::Axiom(
            parts.next().ok_or("missing axiom name")?.to_string(),
        )),
        "nmtaut" => Ok(Justification::NonModalTautology),
        "mp" => Ok(Justification::ModusPonens(
            nat(parts.next())?,
            nat(parts.next())?,
        )),
        "nec" => Ok(Justification::Necessitation(nat(parts.next())?)),
        "mon" => Ok(Justification::Monotonicity(nat(parts.next())?)),
        "rule" => {
            let name = parts.next().ok_or("missing rule name")?.to_string();
            let indices: Vec<usize> = parts
                .map(|p| p.parse().map_err(|_| "bad index".to_string()))
                .collect::<Result<_, _>>()?;
            Ok(Justification::RuleApp(name, indices))
        }
        other => Err(format!("unknown justification `{other}`")),
    }
}
