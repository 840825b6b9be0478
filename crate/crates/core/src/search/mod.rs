//! Bounded exhaustive search over Kripke models: validity, local and
//! global consequence refutation, frame definability, the companion
//! discard method and matrix soundness checks.
//!
//! Enumeration is canonical and deterministic regardless of parallelism:
//! worlds ascending, R cells in row-major order with element indices
//! ascending, then valuations in (variable, world) order with the last
//! cell varying fastest. Parallel workers process frame batches in order
//! and the first hit in canonical order wins.

mod companion_ops;
mod matrix;
mod nonmodal;

pub use companion_ops::{
    companion_discard, companion_lift, DiscardOutcome, DiscardVariant, LiftConclusion, LiftError,
};
pub use matrix::{matrix_soundness, MatrixItem, ModalMatrix};
pub use nonmodal::{
    box_abstract, eval_nonmodal, eval_nonmodal_total, eval_unary, nonmodal_consequence,
    NonModalError,
};

use crate::algebra::{Element, ResiduatedLattice};
use crate::formula::Formula;
use crate::semantics::{FrameClass, KripkeFrame, KripkeModel};
use rayon::prelude::*;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SearchError {
    #[error("model cap of {0} exceeded; verdict withheld")]
    BudgetExceeded(u64),
    #[error(transparent)]
    NonModal(#[from] NonModalError),
    #[error("the possibility operator is not supported here")]
    DiamondUnsupported,
}

/// Search bounds. `jobs` caps the parallelism width; the result does not
/// depend on it.
#[derive(Debug, Clone)]
pub struct SearchBudget {
    pub max_worlds: usize,
    pub model_cap: Option<u64>,
    pub jobs: usize,
}

impl SearchBudget {
    pub fn new(max_worlds: usize) -> SearchBudget {
        assert!(max_worlds >= 1, "maxWorlds must be at least 1");
        SearchBudget {
            max_worlds,
            model_cap: None,
            jobs: 1,
        }
    }

    pub fn with_jobs(mut self, jobs: usize) -> SearchBudget {
        self.jobs = jobs.max(1);
        self
    }

    pub fn with_model_cap(mut self, cap: u64) -> SearchBudget {
        self.model_cap = Some(cap);
        self
    }
}

/// Outcome of a bounded search: everything up to the bound was checked,
/// or a concrete refutation. A refuting verdict always re-verifies before
/// it is emitted.
#[derive(Debug, Clone)]
pub enum Verdict {
    ValidUpTo(usize),
    Refuted { model: KripkeModel, world: usize },
}

impl Verdict {
    pub fn is_refuted(&self) -> bool {
        matches!(self, Verdict::Refuted { .. })
    }
}

/// What a candidate model must violate for the search to stop there.
#[derive(Clone)]
enum Query {
    /// Some world where φ ≠ 1.
    Validity { phi: Formula },
    /// Some world where all of Γ are 1 and φ is not.
    Local { gamma: Vec<Formula>, phi: Formula },
    /// All of Γ valid in the model, φ not valid; the witness world is the
    /// first where φ fails.
    Global { gamma: Vec<Formula>, phi: Formula },
}

impl Query {
    fn formulas(&self) -> Vec<&Formula> {
        match self {
            Query::Validity { phi } => vec![phi],
            Query::Local { gamma, phi } | Query::Global { gamma, phi } => {
                let mut v: Vec<&Formula> = gamma.iter().collect();
                v.push(phi);
                v
            }
        }
    }
}

/// Bounded validity over a frame class: enumerates every model over
/// frames in the class with at most `max_worlds` worlds and all
/// valuations of φ's variables, and returns the first countermodel in
/// canonical order.
pub fn validity_search(
    alg: &Arc<ResiduatedLattice>,
    class: FrameClass,
    phi: &Formula,
    budget: &SearchBudget,
) -> Result<Verdict, SearchError> {
    run_query(
        alg,
        class,
        Query::Validity { phi: phi.clone() },
        budget,
        phi.has_constants(),
    )
}

/// Searches for a local-consequence countermodel: a world where Γ holds
/// and φ does not.
pub fn local_consequence_refute(
    alg: &Arc<ResiduatedLattice>,
    class: FrameClass,
    gamma: &[Formula],
    phi: &Formula,
    budget: &SearchBudget,
) -> Result<Verdict, SearchError> {
    let constants =
        phi.has_constants() || gamma.iter().any(|g| g.has_constants());
    run_query(
        alg,
        class,
        Query::Local {
            gamma: gamma.to_vec(),
            phi: phi.clone(),
        },
        budget,
        constants,
    )
}

/// Searches for a global-consequence countermodel: Γ valid in the model,
/// φ not valid.
pub fn global_consequence_refute(
    alg: &Arc<ResiduatedLattice>,
    class: FrameClass,
    gamma: &[Formula],
    phi: &Formula,
    budget: &SearchBudget,
) -> Result<Verdict, SearchError> {
    let constants =
        phi.has_constants() || gamma.iter().any(|g| g.has_constants());
    run_query(
        alg,
        class,
        Query::Global {
            gamma: gamma.to_vec(),
            phi: phi.clone(),
        },
        budget,
        constants,
    )
}

fn run_query(
    alg: &Arc<ResiduatedLattice>,
    class: FrameClass,
    query: Query,
    budget: &SearchBudget,
    constants: bool,
) -> Result<Verdict, SearchError> {
    let allowed = class.allowed(alg);
    let mut vars: Vec<String> = Vec::new();
    for f in query.formulas() {
        for v in f.variables() {
            if !vars.contains(&v) {
                vars.push(v);
            }
        }
    }
    vars.sort();
    let compiled: Vec<CompiledQueryPart> = match &query {
        Query::Validity { phi } => vec![CompiledQueryPart {
            formula: compile(alg, phi, &vars)?,
            role: Role::Conclusion,
        }],
        Query::Local { gamma, phi } | Query::Global { gamma, phi } => {
            let mut v: Vec<CompiledQueryPart> = gamma
                .iter()
                .map(|g| {
                    Ok(CompiledQueryPart {
                        formula: compile(alg, g, &vars)?,
                        role: Role::Premise,
                    })
                })
                .collect::<Result<_, SearchError>>()?;
            v.push(CompiledQueryPart {
                formula: compile(alg, phi, &vars)?,
                role: Role::Conclusion,
            });
            v
        }
    };
    let global = matches!(query, Query::Global { .. });

    let mut models_seen: u64 = 0;
    for n_worlds in 1..=budget.max_worlds {
        let n_cells = n_worlds * n_worlds;
        let n_frames = (allowed.len() as u64)
            .checked_pow(n_cells as u32)
            .unwrap_or(u64::MAX);
        let n_vals = (alg.size() as u64)
            .checked_pow((vars.len() * n_worlds) as u32)
            .unwrap_or(u64::MAX);
        if let Some(cap) = budget.model_cap {
            let here = n_frames.saturating_mul(n_vals);
            if models_seen.saturating_add(here) > cap {
                return Err(SearchError::BudgetExceeded(cap));
            }
        }
        models_seen = models_seen.saturating_add(n_frames.saturating_mul(n_vals));

        let pool = if budget.jobs > 1 {
            Some(
                rayon::ThreadPoolBuilder::new()
                    .num_threads(budget.jobs)
                    .build()
                    .expect("thread pool"),
            )
        } else {
            None
        };
        let batch = (65536 / n_vals.max(1)).max(64);
        let mut frame_start: u64 = 0;
        while frame_start < n_frames {
            let frame_end = frame_start.saturating_add(batch).min(n_frames);
            let hit = match &pool {
                None => (frame_start..frame_end).find_map(|frame_idx| {
                    check_frame(alg, &allowed, n_worlds, frame_idx, &vars, &compiled, global)
                        .map(|(val_idx, world)| (frame_idx, val_idx, world))
                }),
                Some(pool) => pool.install(|| {
                    (frame_start..frame_end)
                        .into_par_iter()
                        .filter_map(|frame_idx| {
                            check_frame(
                                alg, &allowed, n_worlds, frame_idx, &vars, &compiled, global,
                            )
                            .map(|(val_idx, world)| (frame_idx, val_idx, world))
                        })
                        .min_by_key(|&(f, v, _)| (f, v))
                }),
            };
            if let Some((frame_idx, val_idx, world)) = hit {
                let model =
                    materialize(alg, &allowed, n_worlds, frame_idx, &vars, val_idx, constants);
                // Every Refuted verdict re-verifies on emission.
                verify_refutation(&model, &query, world);
                return Ok(Verdict::Refuted { model, world });
            }
            frame_start = frame_end;
        }
    }
    Ok(Verdict::ValidUpTo(budget.max_worlds))
}

#[derive(Clone, Copy, PartialEq)]
enum Role {
    Premise,
    Conclusion,
}

struct CompiledQueryPart {
    formula: Compiled,
    role: Role,
}

/// Checks all valuations of one frame; returns the first (valuation
/// index, witness world) refuting the query.
#[allow(clippy::too_many_arguments)]
fn check_frame(
    alg: &ResiduatedLattice,
    allowed: &[Element],
    n_worlds: usize,
    frame_idx: u64,
    vars: &[String],
    parts: &[CompiledQueryPart],
    global: bool,
) -> Option<(u64, usize)> {
    let n = alg.size();
    let mut r = vec![0usize; n_worlds * n_worlds];
    let mut rem = frame_idx;
    for cell in (0..n_worlds * n_worlds).rev() {
        r[cell] = allowed[(rem % allowed.len() as u64) as usize].0;
        rem /= allowed.len() as u64;
    }
    let n_cells = vars.len() * n_worlds;
    let n_vals = (n as u64).checked_pow(n_cells as u32).unwrap_or(u64::MAX);
    let mut vals = vec![0usize; n_cells];
    for val_idx in 0..n_vals {
        let mut rem = val_idx;
        for cell in (0..n_cells).rev() {
            vals[cell] = (rem % n as u64) as usize;
            rem /= n as u64;
        }
        if global {
            // premises must be valid in the whole model
            let premises_ok = parts.iter().filter(|p| p.role == Role::Premise).all(|p| {
                (0..n_worlds).all(|w| eval_compiled(alg, &p.formula, w, &r, &vals, n_worlds) == alg.top().0)
            });
            if premises_ok {
                let conclusion = parts
                    .iter()
                    .find(|p| p.role == Role::Conclusion)
                    .expect("query has a conclusion");
                for w in 0..n_worlds {
                    if eval_compiled(alg, &conclusion.formula, w, &r, &vals, n_worlds)
                        != alg.top().0
                    {
                        return Some((val_idx, w));
                    }
                }
            }
        } else {
            for w in 0..n_worlds {
                let mut premises_ok = true;
                let mut conclusion_fails = false;
                for p in parts {
                    let v = eval_compiled(alg, &p.formula, w, &r, &vals, n_worlds);
                    match p.role {
                        Role::Premise => {
                            if v != alg.top().0 {
                                premises_ok = false;
                                break;
                            }
                        }
                        Role::Conclusion => conclusion_fails = v != alg.top().0,
                    }
                }
                if premises_ok && conclusion_fails {
                    return Some((val_idx, w));
                }
            }
        }
    }
    None
}

fn materialize(
    alg: &Arc<ResiduatedLattice>,
    allowed: &[Element],
    n_worlds: usize,
    frame_idx: u64,
    vars: &[String],
    val_idx: u64,
    constants: bool,
) -> KripkeModel {
    let worlds: Vec<String> = (0..n_worlds).map(|i| format!("w{i}")).collect();
    let mut frame = KripkeFrame::new(alg.clone(), worlds);
    let mut rem = frame_idx;
    for cell in (0..n_worlds * n_worlds).rev() {
        let e = allowed[(rem % allowed.len() as u64) as usize];
        rem /= allowed.len() as u64;
        frame.set_r(cell / n_worlds, cell % n_worlds, e);
    }
    let mut model = KripkeModel::new(frame).with_constants(constants);
    let n_cells = vars.len() * n_worlds;
    let mut rem = val_idx;
    for cell in (0..n_cells).rev() {
        let e = Element((rem % alg.size() as u64) as usize);
        rem /= alg.size() as u64;
        model.set_value(&vars[cell / n_worlds], cell % n_worlds, e);
    }
    model
}

fn verify_refutation(model: &KripkeModel, query: &Query, world: usize) {
    let check = |f: &Formula, w: usize| model.eval(f, w).expect("countermodel re-evaluates");
    let top = model.algebra().top();
    match query {
        Query::Validity { phi } => {
            assert_ne!(check(phi, world), top, "refutation failed to re-verify");
        }
        Query::Local { gamma, phi } => {
            assert!(gamma.iter().all(|g| check(g, world) == top));
            assert_ne!(check(phi, world), top, "refutation failed to re-verify");
        }
        Query::Global { gamma, phi } => {
            for w in 0..model.frame.n_worlds() {
                assert!(gamma.iter().all(|g| check(g, w) == top));
            }
            assert_ne!(check(phi, world), top, "refutation failed to re-verify");
        }
    }
}

// ---------------------------------------------------------------------
// Compiled formulas: variables resolved to indices, constants to element
// indices, for the inner enumeration loops.

#[derive(Clone)]
enum Compiled {
    Var(usize),
    Elem(usize),
    And(Box<Compiled>, Box<Compiled>),
    Or(Box<Compiled>, Box<Compiled>),
    Fusion(Box<Compiled>, Box<Compiled>),
    Implies(Box<Compiled>, Box<Compiled>),
    Box(Box<Compiled>),
    Diamond(Box<Compiled>),
}

fn compile(
    alg: &ResiduatedLattice,
    f: &Formula,
    vars: &[String],
) -> Result<Compiled, SearchError> {
    Ok(match f {
        Formula::Var(v) => Compiled::Var(
            vars.iter()
                .position(|x| x == v)
                .expect("variable collected beforehand"),
        ),
        Formula::Zero => Compiled::Elem(alg.bottom().0),
        Formula::One => Compiled::Elem(alg.top().0),
        Formula::Const(c) => Compiled::Elem(
            alg.by_label(c)
                .map_err(|_| NonModalError::UnknownConstant(c.clone()))?
                .0,
        ),
        Formula::And(a, b) => Compiled::And(
            Box::new(compile(alg, a, vars)?),
            Box::new(compile(alg, b, vars)?),
        ),
        Formula::Or(a, b) => Compiled::Or(
            Box::new(compile(alg, a, vars)?),
            Box::new(compile(alg, b, vars)?),
        ),
        Formula::Fusion(a, b) => Compiled::Fusion(
            Box::new(compile(alg, a, vars)?),
            Box::new(compile(alg, b, vars)?),
        ),
        Formula::Implies(a, b) => Compiled::Implies(
            Box::new(compile(alg, a, vars)?),
            Box::new(compile(alg, b, vars)?),
        ),
        Formula::Box(a) => Compiled::Box(Box::new(compile(alg, a, vars)?)),
        Formula::Diamond(a) => Compiled::Diamond(Box::new(compile(alg, a, vars)?)),
    })
}

/// `r` is row-major n_worlds x n_worlds, `vals` is (var, world) with the
/// world index varying fastest.
fn eval_compiled(
    alg: &ResiduatedLattice,
    f: &Compiled,
    world: usize,
    r: &[usize],
    vals: &[usize],
    n_worlds: usize,
) -> usize {
    match f {
        Compiled::Var(v) => vals[v * n_worlds + world],
        Compiled::Elem(e) => *e,
        Compiled::And(a, b) => {
            let x = eval_compiled(alg, a, world, r, vals, n_worlds);
            let y = eval_compiled(alg, b, world, r, vals, n_worlds);
            alg.meet(Element(x), Element(y)).0
        }
        Compiled::Or(a, b) => {
            let x = eval_compiled(alg, a, world, r, vals, n_worlds);
            let y = eval_compiled(alg, b, world, r, vals, n_worlds);
            alg.join(Element(x), Element(y)).0
        }
        Compiled::Fusion(a, b) => {
            let x = eval_compiled(alg, a, world, r, vals, n_worlds);
            let y = eval_compiled(alg, b, world, r, vals, n_worlds);
            alg.fus(Element(x), Element(y)).0
        }
        Compiled::Implies(a, b) => {
            let x = eval_compiled(alg, a, world, r, vals, n_worlds);
            let y = eval_compiled(alg, b, world, r, vals, n_worlds);
            alg.res(Element(x), Element(y)).0
        }
        Compiled::Box(a) => {
            let mut acc = alg.top().0;
            for w2 in 0..n_worlds {
                let v = eval_compiled(alg, a, w2, r, vals, n_worlds);
                acc = alg
                    .meet(
                        Element(acc),
                        alg.res(Element(r[world * n_worlds + w2]), Element(v)),
                    )
                    .0;
            }
            acc
        }
        Compiled::Diamond(a) => {
            let mut acc = alg.bottom().0;
            for w2 in 0..n_worlds {
                let v = eval_compiled(alg, a, w2, r, vals, n_worlds);
                acc = alg
                    .join(
                        Element(acc),
                        alg.fus(Element(r[world * n_worlds + w2]), Element(v)),
                    )
                    .0;
            }
            acc
        }
    }
}

/// Frame definability: does Φ define exactly the given class among frames
/// with at most `max_worlds` worlds?  Frame validity quantifies over all
/// valuations of Φ's variables. Returns either `Ok(())` or the first
/// counterexample frame together with the direction that failed.
pub struct DefinabilityFailure {
    pub frame: KripkeFrame,
    /// true: frame validates Φ but is outside the class;
    /// false: frame is in the class but refutes some φ ∈ Φ.
    pub validates_but_outside: bool,
}

pub fn frame_definability_check(
    alg: &Arc<ResiduatedLattice>,
    phis: &[Formula],
    class: FrameClass,
    budget: &SearchBudget,
) -> Result<Result<(), Box<DefinabilityFailure>>, SearchError> {
    let mut vars: Vec<String> = Vec::new();
    for f in phis {
        for v in f.variables() {
            if !vars.contains(&v) {
                vars.push(v);
            }
        }
    }
    vars.sort();
    let compiled: Vec<Compiled> = phis
        .iter()
        .map(|f| compile(alg, f, &vars))
        .collect::<Result<_, _>>()?;
    let n = alg.size();
    let mut class_member = vec![false; n];
    for e in class.allowed(alg) {
        class_member[e.0] = true;
    }
    for n_worlds in 1..=budget.max_worlds {
        let n_cells = n_worlds * n_worlds;
        let n_frames = (n as u64).checked_pow(n_cells as u32).unwrap_or(u64::MAX);
        let n_val_cells = vars.len() * n_worlds;
        let n_vals = (n as u64)
            .checked_pow(n_val_cells as u32)
            .unwrap_or(u64::MAX);
        if let Some(cap) = budget.model_cap {
            if n_frames.saturating_mul(n_vals) > cap {
                return Err(SearchError::BudgetExceeded(cap));
            }
        }
        for frame_idx in 0..n_frames {
            let mut r = vec![0usize; n_cells];
            let mut rem = frame_idx;
            for slot in r.iter_mut().rev() {
                *slot = (rem % n as u64) as usize;
                rem /= n as u64;
            }
            let in_class = r.iter().all(|&e| class_member[e]);
            let mut validates = true;
            let mut vals = vec![0usize; n_val_cells];
            'vals: for val_idx in 0..n_vals {
                let mut rem = val_idx;
                for cell in (0..n_val_cells).rev() {
                    vals[cell] = (rem % n as u64) as usize;
                    rem /= n as u64;
                }
                for c in &compiled {
                    for w in 0..n_worlds {
                        if eval_compiled(alg, c, w, &r, &vals, n_worlds) != alg.top().0 {
                            validates = false;
                            break 'vals;
                        }
                    }
                }
            }
            if validates != in_class {
                let worlds: Vec<String> = (0..n_worlds).map(|i| format!("w{i}")).collect();
                let mut frame = KripkeFrame::new(alg.clone(), worlds);
                for (cell, &e) in r.iter().enumerate() {
                    frame.set_r(cell / n_worlds, cell % n_worlds, Element(e));
                }
                return Ok(Err(Box::new(DefinabilityFailure {
                    frame,
                    validates_but_outside: validates,
                })));
            }
        }
    }
    Ok(Ok(()))
}

#[cfg(test)]
mod tests;
