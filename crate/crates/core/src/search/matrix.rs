//! Logical-matrix soundness: a matrix is a base algebra with an explicit
//! unary box table and a designated element set. Axioms must designate
//! under every element instantiation of their metavariables; a rule must
//! designate its conclusion whenever all premises designate.

use crate::algebra::{Element, ResiduatedLattice};
use crate::calculus::{Calculus, NonModalBase};
use crate::formula::{Formula, SchemaNode};
use std::collections::BTreeMap;
use std::sync::Arc;

#[derive(Debug, Clone)]
pub struct ModalMatrix {
    pub algebra: Arc<ResiduatedLattice>,
    /// `box_table[a]` is the value of □ā.
    pub box_table: Vec<Element>,
    pub designated: Vec<Element>,
}

impl ModalMatrix {
    pub fn new(
        algebra: Arc<ResiduatedLattice>,
        box_table: Vec<Element>,
        designated: Vec<Element>,
    ) -> ModalMatrix {
        assert_eq!(box_table.len(), algebra.size());
        assert!(!designated.is_empty(), "designated set must be nonempty");
        ModalMatrix {
            algebra,
            box_table,
            designated,
        }
    }

    fn is_designated(&self, a: Element) -> bool {
        self.designated.contains(&a)
    }

    /// Evaluates a schema body with metavariables bound to elements.
    fn eval_schema(&self, s: &SchemaNode, env: &BTreeMap<String, Element>) -> Element {
        let alg = &*self.algebra;
        match s {
            SchemaNode::MetaFormula(m) => env[m],
            SchemaNode::MetaElement(m, _) => env[m],
            SchemaNode::Var(v) => env[v],
            SchemaNode::Zero => alg.bottom(),
            SchemaNode::One => alg.top(),
            SchemaNode::Const(c) => alg.by_label(c).expect("matrix constant resolves"),
            SchemaNode::And(a, b) => alg.meet(self.eval_schema(a, env), self.eval_schema(b, env)),
            SchemaNode::Or(a, b) => alg.join(self.eval_schema(a, env), self.eval_schema(b, env)),
            SchemaNode::Fusion(a, b) => {
                alg.fus(self.eval_schema(a, env), self.eval_schema(b, env))
            }
            SchemaNode::Implies(a, b) => {
                alg.res(self.eval_schema(a, env), self.eval_schema(b, env))
            }
            SchemaNode::Box(a) => self.box_table[self.eval_schema(a, env).0],
            SchemaNode::Diamond(_) => panic!("matrices interpret the box only"),
        }
    }

    fn eval_formula(&self, f: &Formula, env: &BTreeMap<String, Element>) -> Element {
        let alg = &*self.algebra;
        match f {
            Formula::Var(v) => env[v],
            Formula::Zero => alg.bottom(),
            Formula::One => alg.top(),
            Formula::Const(c) => alg.by_label(c).expect("matrix constant resolves"),
            Formula::And(a, b) => alg.meet(self.eval_formula(a, env), self.eval_formula(b, env)),
            Formula::Or(a, b) => alg.join(self.eval_formula(a, env), self.eval_formula(b, env)),
            Formula::Fusion(a, b) => {
                alg.fus(self.eval_formula(a, env), self.eval_formula(b, env))
            }
            Formula::Implies(a, b) => {
                alg.res(self.eval_formula(a, env), self.eval_formula(b, env))
            }
            Formula::Box(a) => self.box_table[self.eval_formula(a, env).0],
            Formula::Diamond(_) => panic!("matrices interpret the box only"),
        }
    }
}

/// One item of a matrix soundness report.
#[derive(Debug, Clone)]
pub struct MatrixItem {
    pub name: String,
    pub pass: bool,
    /// First failing assignment (metavariable -> element label), if any.
    pub witness: Option<Vec<(String, String)>>,
}

/// Checks every named axiom and rule of the calculus in the matrix, plus
/// the structural rules and (for oracle-based calculi) a deterministic
/// pool of formulas valid in the base algebra. Reports the first witness
/// per failing item.
pub fn matrix_soundness(matrix: &ModalMatrix, calc: &Calculus) -> Vec<MatrixItem> {
    let alg = &*matrix.algebra;
    let mut items = Vec::new();

    for schema in &calc.axioms {
        let metas = schema.body.metavariables();
        let witness = first_assignment(alg, &metas, |env| {
            !matrix.is_designated(matrix.eval_schema(&schema.body, env))
        });
        items.push(MatrixItem {
            name: schema.name.clone(),
            pass: witness.is_none(),
            witness: witness.map(|env| describe(alg, &env)),
        });
    }

    if calc.structural.modus_ponens {
        let witness = first_assignment(alg, &fresh2(), |env| {
            let x = env["phi"];
            let y = env["psi"];
            matrix.is_designated(x)
                && matrix.is_designated(alg.res(x, y))
                && !matrix.is_designated(y)
        });
        items.push(MatrixItem {
            name: "MP".into(),
            pass: witness.is_none(),
            witness: witness.map(|env| describe(alg, &env)),
        });
    }
    if calc.structural.necessity {
        let witness = first_assignment(alg, &["phi".to_string()], |env| {
            let x = env["phi"];
            matrix.is_designated(x) && !matrix.is_designated(matrix.box_table[x.0])
        });
        items.push(MatrixItem {
            name: "N".into(),
            pass: witness.is_none(),
            witness: witness.map(|env| describe(alg, &env)),
        });
    }
    if calc.structural.monotonicity {
        let witness = first_assignment(alg, &fresh2(), |env| {
            let x = env["phi"];
            let y = env["psi"];
            matrix.is_designated(alg.res(x, y))
                && !matrix.is_designated(alg.res(matrix.box_table[x.0], matrix.box_table[y.0]))
        });
        items.push(MatrixItem {
            name: "Mon".into(),
            pass: witness.is_none(),
            witness: witness.map(|env| describe(alg, &env)),
        });
    }

    for rule in &calc.rules {
        let mut metas: Vec<String> = rule.conclusion.body.metavariables();
        for p in &rule.premises {
            for m in p.body.metavariables() {
                if !metas.contains(&m) {
                    metas.push(m);
                }
            }
        }
        metas.sort();
        let witness = first_assignment(alg, &metas, |env| {
            rule.premises
                .iter()
                .all(|p| matrix.is_designated(matrix.eval_schema(&p.body, env)))
                && !matrix.is_designated(matrix.eval_schema(&rule.conclusion.body, env))
        });
        items.push(MatrixItem {
            name: rule.name.clone(),
            pass: witness.is_none(),
            witness: witness.map(|env| describe(alg, &env)),
        });
    }

    if calc.base == NonModalBase::Oracle {
        let pool = base_valid_pool(&calc.algebra);
        let mut witness: Option<(Formula, BTreeMap<String, Element>)> = None;
        'outer: for f in &pool {
            let vars: Vec<String> = f.variables().into_iter().collect();
            if let Some(env) = first_assignment(alg, &vars, |env| {
                !matrix.is_designated(matrix.eval_formula(f, env))
            }) {
                witness = Some((f.clone(), env));
                break 'outer;
            }
        }
        items.push(MatrixItem {
            name: "NonModalBase".into(),
            pass: witness.is_none(),
            witness: witness.map(|(f, env)| {
                let mut d = describe(alg, &env);
                d.insert(0, ("formula".into(), f.to_string()));
                d
            }),
        });
    }

    items
}

fn fresh2() -> Vec<String> {
    vec!["phi".to_string(), "psi".to_string()]
}

fn describe(alg: &ResiduatedLattice, env: &BTreeMap<String, Element>) -> Vec<(String, String)> {
    env.iter()
        .map(|(k, v)| (k.clone(), alg.label(*v).to_string()))
        .collect()
}

/// First assignment (canonical order: names as given, last varying
/// fastest) satisfying the predicate.
fn first_assignment(
    alg: &ResiduatedLattice,
    names: &[String],
    pred: impl Fn(&BTreeMap<String, Element>) -> bool,
) -> Option<BTreeMap<String, Element>> {
    let n = alg.size() as u64;
    let total = n.checked_pow(names.len() as u32).expect("space overflow");
    let mut env = BTreeMap::new();
    for code in 0..total {
        let mut rem = code;
        for name in names.iter().rev() {
            env.insert(name.clone(), Element((rem % n) as usize));
            rem /= n;
        }
        if pred(&env) {
            return Some(env);
        }
    }
    None
}

/// Deterministic pool of formulas valid in the base algebra, used to spot
/// matrices whose underlying algebra escapes the base's quasivariety.
fn base_valid_pool(base: &ResiduatedLattice) -> Vec<Formula> {
    let candidates = [
        "p -> p",
        "p -> (q -> p)",
        "(p -> q) -> ((q -> r) -> (p -> r))",
        "(p * q) -> p",
        "(p /\\ q) -> p",
        "p -> (p \\/ q)",
        "(p -> (q -> r)) -> ((p * q) -> r)",
        "((p * q) -> r) -> (p -> (q -> r))",
        "(p -> q) \\/ (q -> p)",
        "~(p * ~p)",
        "(p * (p -> q)) -> (p /\\ q)",
        "(p /\\ q) -> (p * (p -> q))",
        "~~p -> p",
        "p -> ~~p",
        "(p + ~p)",
    ];
    candidates
        .iter()
        .filter_map(|text| crate::formula::parse(text, false).ok())
        .filter(|f| {
            crate::search::nonmodal_consequence(base, &[], f, false)
                .map(|(holds, _)| holds)
                .unwrap_or(false)
        })
        .collect()
}
