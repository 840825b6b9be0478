//! Preset calculi.
//!
//! - `table3(A^c)`: □1, (□φ∧□ψ)→□(φ∧ψ), □(ā→φ)↔(ā→□φ) per element;
//!   Monotonicity; oracle base. Axiomatizes the theorems over all frames.
//! - `table3k`: table3 plus the normality axiom (K), for idempotent frames.
//! - `table4(A^c)`: table3 plus □(k̄∨φ)→(k̄∨□φ) for the unique coatom k;
//!   for crisp frames.
//! - `table1(Łn)`: (K), □(φ⊕φ)↔(□φ⊕□φ), □(φ⊙φ)↔(□φ⊙□φ); Necessity;
//!   crisp-frame Łukasiewicz system.
//! - `table5(Łn)`: □1, (□φ∧□ψ)→□(φ∧ψ); Monotonicity and the rules R_a
//!   expanded with the characterizing formulas; all frames over Łn.
//! - `table2`: the standard Gödel system, syntax-only (explicit axiom
//!   list, no oracle, soundness probing disabled).
//! - `corA16(A^c)`: non-modal; witnessing/book-keeping plus the rule
//!   k̄∨p ⊢ p. `corA17(A^c)`: for simple A, Modus Ponens only.

use super::generate::{bookkeeping_schemas, witnessing_schema};
use super::{CalcError, Calculus, NonModalBase, Rule, StructuralRules};
use crate::algebra::{classify, ResiduatedLattice};
use crate::formula::{characterizing_formula, Formula, Schema, SchemaNode};
use std::sync::Arc;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CalculusPreset {
    Table1,
    Table2,
    Table3,
    Table3K,
    Table4,
    Table5,
    CorA16,
    CorA17,
}

impl CalculusPreset {
    pub fn parse(s: &str) -> Option<CalculusPreset> {
        match s {
            "table1" => Some(CalculusPreset::Table1),
            "table2" => Some(CalculusPreset::Table2),
            "table3" => Some(CalculusPreset::Table3),
            "table3+K" | "table3k" => Some(CalculusPreset::Table3K),
            "table4" => Some(CalculusPreset::Table4),
            "table5" => Some(CalculusPreset::Table5),
            "corA16" | "cora16" => Some(CalculusPreset::CorA16),
            "corA17" | "cora17" => Some(CalculusPreset::CorA17),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            CalculusPreset::Table1 => "table1",
            CalculusPreset::Table2 => "table2",
            CalculusPreset::Table3 => "table3",
            CalculusPreset::Table3K => "table3+K",
            CalculusPreset::Table4 => "table4",
            CalculusPreset::Table5 => "table5",
            CalculusPreset::CorA16 => "corA16",
            CalculusPreset::CorA17 => "corA17",
        }
    }

    /// Whether the preset's language has canonical constants.
    pub fn constants(self) -> bool {
        matches!(
            self,
            CalculusPreset::Table3
                | CalculusPreset::Table3K
                | CalculusPreset::Table4
                | CalculusPreset::CorA16
                | CalculusPreset::CorA17
        )
    }
}

fn phi() -> SchemaNode {
    SchemaNode::meta("phi")
}

fn psi() -> SchemaNode {
    SchemaNode::meta("psi")
}

/// (K): □(φ→ψ)→(□φ→□ψ)
pub fn schema_k() -> Schema {
    Schema::new(
        "K",
        phi()
            .implies(psi())
            .boxed()
            .implies(phi().boxed().implies(psi().boxed())),
    )
}

/// (MD) direction used by the tables: (□φ∧□ψ)→□(φ∧ψ)
pub fn schema_md_in() -> Schema {
    Schema::new(
        "MD",
        phi()
            .boxed()
            .and(psi().boxed())
            .implies(phi().and(psi()).boxed()),
    )
}

/// □1
pub fn schema_box_one() -> Schema {
    Schema::new("Box1", SchemaNode::One.boxed())
}

/// (Ax_a): □(ā→φ) ↔ (ā→□φ) for a concrete element a.
fn schema_ax_elem(alg: &ResiduatedLattice, a: crate::algebra::Element) -> Schema {
    let c = element_node(alg, a);
    Schema::new(
        &format!("Ax_{}", alg.label(a)),
        c.clone()
            .implies(phi())
            .boxed()
            .iff(c.implies(phi().boxed())),
    )
}

/// □(k̄∨φ) → (k̄∨□φ) for the unique coatom k.
fn schema_crisp_coatom(alg: &ResiduatedLattice, k: crate::algebra::Element) -> Schema {
    let c = element_node(alg, k);
    Schema::new(
        &format!("Cr_{}", alg.label(k)),
        c.clone()
            .or(phi())
            .boxed()
            .implies(c.or(phi().boxed())),
    )
}

fn element_node(alg: &ResiduatedLattice, a: crate::algebra::Element) -> SchemaNode {
    if a == alg.bottom() {
        SchemaNode::Zero
    } else if a == alg.top() {
        SchemaNode::One
    } else {
        SchemaNode::Const(alg.label(a).to_string())
    }
}

fn schema_from_eta(f: &Formula, meta: &[&str]) -> SchemaNode {
    match f {
        Formula::Var(_) => SchemaNode::meta(meta[0]),
        _ => SchemaNode::from_formula(
            &{
                // rename the single variable of the eta term to the metavariable
                let vars: Vec<String> = f.variables().into_iter().collect();
                let mut s = std::collections::BTreeMap::new();
                for v in vars {
                    s.insert(v, Formula::Var(meta[0].to_string()));
                }
                f.substitute(&s)
            },
            &[meta[0]],
        ),
    }
}

/// Expanded (R_a) for a finite MV chain: for each b > ¬a the premise
/// `(η_{a2⊙b}(φ2) ∧ … ∧ η_{an⊙b}(φn)) → η_{a⊙b}(φ)` with a_i = (i−1)/(n−1),
/// conclusion `(η_{a2}(□φ2) ∧ … ∧ η_{an}(□φn)) → η_a(□φ)`. η_0 is the
/// constant 1, kept literally in the emitted schemas.
fn rule_ra(alg: &ResiduatedLattice, a: crate::algebra::Element) -> Rule {
    let n = alg.size();
    let meta_name = |i: usize| format!("phi{i}"); // phi2 .. phin
    let eta_of = |value: crate::algebra::Element, inner: SchemaNode| -> SchemaNode {
        if value == alg.bottom() {
            SchemaNode::One
        } else {
            let eta = characterizing_formula(alg, value).expect("eta exists");
            substitute_schema_var(&schema_from_eta(&eta, &["p"]), "p", &inner)
        }
    };
    let conjunction = |parts: Vec<SchemaNode>| -> SchemaNode {
        parts
            .into_iter()
            .reduce(|x, y| x.and(y))
            .expect("nonempty conjunction")
    };
    let mut premises = Vec::new();
    for b in alg.elements() {
        if !alg.lt(alg.neg(a), b) {
            continue;
        }
        let parts: Vec<SchemaNode> = (2..=n)
            .map(|i| {
                let ai = crate::algebra::Element(i - 1);
                eta_of(alg.fus(ai, b), SchemaNode::meta(&meta_name(i)))
            })
            .collect();
        let head = conjunction(parts);
        premises.push(Schema::new(
            &format!("R_{}[b={}]", alg.label(a), alg.label(b)),
            head.implies(eta_of(alg.fus(a, b), SchemaNode::meta("phi"))),
        ));
    }
    let parts: Vec<SchemaNode> = (2..=n)
        .map(|i| {
            let ai = crate::algebra::Element(i - 1);
            eta_of(ai, SchemaNode::meta(&meta_name(i)).boxed())
        })
        .collect();
    let conclusion = Schema::new(
        &format!("R_{}", alg.label(a)),
        conjunction(parts).implies(eta_of(a, SchemaNode::meta("phi").boxed())),
    );
    Rule {
        name: format!("R_{}", alg.label(a)),
        premises,
        conclusion,
    }
}

fn substitute_schema_var(s: &SchemaNode, meta: &str, replacement: &SchemaNode) -> SchemaNode {
    match s {
        SchemaNode::MetaFormula(m) if m == meta => replacement.clone(),
        SchemaNode::MetaFormula(_)
        | SchemaNode::MetaElement(..)
        | SchemaNode::Var(_)
        | SchemaNode::Zero
        | SchemaNode::One
        | SchemaNode::Const(_) => s.clone(),
        SchemaNode::And(a, b) => SchemaNode::And(
            Box::new(substitute_schema_var(a, meta, replacement)),
            Box::new(substitute_schema_var(b, meta, replacement)),
        ),
        SchemaNode::Or(a, b) => SchemaNode::Or(
            Box::new(substitute_schema_var(a, meta, replacement)),
            Box::new(substitute_schema_var(b, meta, replacement)),
        ),
        SchemaNode::Fusion(a, b) => SchemaNode::Fusion(
            Box::new(substitute_schema_var(a, meta, replacement)),
            Box::new(substitute_schema_var(b, meta, replacement)),
        ),
        SchemaNode::Implies(a, b) => SchemaNode::Implies(
            Box::new(substitute_schema_var(a, meta, replacement)),
            Box::new(substitute_schema_var(b, meta, replacement)),
        ),
        SchemaNode::Box(a) => {
            SchemaNode::Box(Box::new(substitute_schema_var(a, meta, replacement)))
        }
        SchemaNode::Diamond(a) => {
            SchemaNode::Diamond(Box::new(substitute_schema_var(a, meta, replacement)))
        }
    }
}

pub fn preset_calculus(
    preset: CalculusPreset,
    alg: Arc<ResiduatedLattice>,
    constants: bool,
) -> Result<Calculus, CalcError> {
    if preset.constants() && !constants {
        return Err(CalcError::PrerequisiteFails(format!(
            "{} requires canonical constants",
            preset.name()
        )));
    }
    if !preset.constants() && constants {
        return Err(CalcError::PrerequisiteFails(format!(
            "{} is constant-free",
            preset.name()
        )));
    }
    let report = classify(&alg);
    match preset {
        CalculusPreset::Table3 | CalculusPreset::Table3K | CalculusPreset::Table4 => {
            let mut axioms = vec![schema_box_one(), schema_md_in()];
            for a in alg.elements() {
                axioms.push(schema_ax_elem(&alg, a));
            }
            if preset == CalculusPreset::Table3K {
                axioms.push(schema_k());
            }
            if preset == CalculusPreset::Table4 {
                let Some(k) = alg.unique_coatom() else {
                    return Err(CalcError::PrerequisiteFails(
                        "table4 requires a unique coatom".into(),
                    ));
                };
                axioms.push(schema_crisp_coatom(&alg, k));
            }
            Ok(Calculus {
                name: format!("{}({})", preset.name(), alg.name()),
                algebra: alg,
                constants: true,
                axioms,
                rules: Vec::new(),
                base: NonModalBase::Oracle,
                structural: StructuralRules {
                    modus_ponens: true,
                    necessity: false,
                    monotonicity: true,
                },
            })
        }
        CalculusPreset::Table1 => {
            if !(report.is_mv && report.is_chain) {
                return Err(CalcError::PrerequisiteFails(
                    "table1 requires a finite MV chain".into(),
                ));
            }
            let tau1 = |inner: SchemaNode| inner.clone().fus(inner);
            let tau2 = |inner: SchemaNode| inner.clone().oplus(inner);
            let axioms = vec![
                schema_k(),
                Schema::new("BoxOplus", tau2(phi()).boxed().iff(tau2(phi().boxed()))),
                Schema::new("BoxFus", tau1(phi()).boxed().iff(tau1(phi().boxed()))),
            ];
            Ok(Calculus {
                name: format!("table1({})", alg.name()),
                algebra: alg,
                constants: false,
                axioms,
                rules: Vec::new(),
                base: NonModalBase::Oracle,
                structural: StructuralRules {
                    modus_ponens: true,
                    necessity: true,
                    monotonicity: false,
                },
            })
        }
        CalculusPreset::Table5 => {
            if !(report.is_mv && report.is_chain) {
                return Err(CalcError::PrerequisiteFails(
                    "table5 requires a finite MV chain".into(),
                ));
            }
            let axioms = vec![schema_box_one(), schema_md_in()];
            let rules = alg
                .elements()
                .filter(|&a| a != alg.bottom())
                .map(|a| rule_ra(&alg, a))
                .collect();
            Ok(Calculus {
                name: format!("table5({})", alg.name()),
                algebra: alg,
                constants: false,
                axioms,
                rules,
                base: NonModalBase::Oracle,
                structural: StructuralRules {
                    modus_ponens: true,
                    necessity: false,
                    monotonicity: true,
                },
            })
        }
        CalculusPreset::Table2 => {
            // Standard Gödel system: explicit axiom schemas, no oracle.
            let neg2 = |s: SchemaNode| s.not().not();
            let axioms = vec![
                schema_k(),
                Schema::new("DNBox", neg2(phi().boxed()).implies(neg2(phi()).boxed())),
            ];
            Ok(Calculus {
                name: "table2".into(),
                algebra: alg,
                constants: false,
                axioms,
                rules: Vec::new(),
                base: NonModalBase::None,
                structural: StructuralRules {
                    modus_ponens: true,
                    necessity: true,
                    monotonicity: false,
                },
            })
        }
        CalculusPreset::CorA16 | CalculusPreset::CorA17 => {
            if preset == CalculusPreset::CorA16 && alg.unique_coatom().is_none() {
                return Err(CalcError::PrerequisiteFails(
                    "corA16 requires a unique coatom".into(),
                ));
            }
            if preset == CalculusPreset::CorA17 && !report.is_simple {
                return Err(CalcError::PrerequisiteFails(
                    "corA17 requires a simple algebra".into(),
                ));
            }
            let mut axioms = bookkeeping_schemas(&alg);
            axioms.push(witnessing_schema(&alg));
            let mut rules = Vec::new();
            if preset == CalculusPreset::CorA16 {
                let k = alg.unique_coatom().expect("checked above");
                rules.push(Rule {
                    name: "CoatomCut".into(),
                    premises: vec![Schema::new(
                        "CoatomCut[prem]",
                        element_node(&alg, k).or(phi()),
                    )],
                    conclusion: Schema::new("CoatomCut", phi()),
                });
            }
            Ok(Calculus {
                name: format!("{}({})", preset.name(), alg.name()),
                algebra: alg,
                constants: true,
                axioms,
                rules,
                base: NonModalBase::Oracle,
                structural: StructuralRules {
                    modus_ponens: true,
                    necessity: false,
                    monotonicity: false,
                },
            })
        }
    }
}
