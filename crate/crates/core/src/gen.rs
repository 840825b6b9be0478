//! Deterministic random generators for formulas and models, used by the
//! property suites and the reproduction scenarios. Everything is seeded;
//! the same seed gives the same stream on every platform.

use crate::algebra::{Element, ResiduatedLattice};
use crate::formula::Formula;
use crate::semantics::{FrameClass, KripkeFrame, KripkeModel};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::sync::Arc;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random formula over the given variables. `modal` allows □ (never ◇).
pub fn random_formula(
    rng: &mut ChaCha8Rng,
    vars: &[&str],
    depth: usize,
    modal: bool,
) -> Formula {
    if depth == 0 || rng.gen_ratio(1, 4) {
        return match rng.gen_range(0..vars.len() + 2) {
            0 => Formula::Zero,
            1 => Formula::One,
            k => Formula::var(vars[k - 2]),
        };
    }
    let a = random_formula(rng, vars, depth - 1, modal);
    match rng.gen_range(0..if modal { 7 } else { 6 }) {
        0 => a.and(random_formula(rng, vars, depth - 1, modal)),
        1 => a.or(random_formula(rng, vars, depth - 1, modal)),
        2 => a.fus(random_formula(rng, vars, depth - 1, modal)),
        3 => a.implies(random_formula(rng, vars, depth - 1, modal)),
        4 => a.not(),
        5 => a.oplus(random_formula(rng, vars, depth - 1, modal)),
        _ => a.boxed(),
    }
}

/// Random formula that may also use ◇ and canonical constants; used by
/// the parser round-trip suites.
pub fn random_formula_full(
    rng: &mut ChaCha8Rng,
    vars: &[&str],
    constants: &[&str],
    depth: usize,
) -> Formula {
    if depth == 0 || rng.gen_ratio(1, 4) {
        let n_atoms = vars.len() + constants.len() + 2;
        return match rng.gen_range(0..n_atoms) {
            0 => Formula::Zero,
            1 => Formula::One,
            k if k - 2 < vars.len() => Formula::var(vars[k - 2]),
            k => Formula::Const(constants[k - 2 - vars.len()].to_string()),
        };
    }
    let a = random_formula_full(rng, vars, constants, depth - 1);
    match rng.gen_range(0..9) {
        0 => a.and(random_formula_full(rng, vars, constants, depth - 1)),
        1 => a.or(random_formula_full(rng, vars, constants, depth - 1)),
        2 => a.fus(random_formula_full(rng, vars, constants, depth - 1)),
        3 => a.implies(random_formula_full(rng, vars, constants, depth - 1)),
        4 => a.not(),
        5 => a.oplus(random_formula_full(rng, vars, constants, depth - 1)),
        6 => a.boxed(),
        7 => a.diamond(),
        _ => a.iff(random_formula_full(rng, vars, constants, depth - 1)),
    }
}

/// Random model in the given frame class: uniform world count in
/// 1..=max_worlds, uniform R values over the class's allowed elements,
/// uniform valuations for the listed variables.
pub fn random_model(
    rng: &mut ChaCha8Rng,
    alg: &Arc<ResiduatedLattice>,
    class: FrameClass,
    vars: &[&str],
    max_worlds: usize,
    constants: bool,
) -> KripkeModel {
    let n_worlds = rng.gen_range(1..=max_worlds);
    let allowed = class.allowed(alg);
    let worlds: Vec<String> = (0..n_worlds).map(|i| format!("w{i}")).collect();
    let mut frame = KripkeFrame::new(alg.clone(), worlds);
    for i in 0..n_worlds {
        for j in 0..n_worlds {
            frame.set_r(i, j, allowed[rng.gen_range(0..allowed.len())]);
        }
    }
    let mut model = KripkeModel::new(frame).with_constants(constants);
    for v in vars {
        for w in 0..n_worlds {
            model.set_value(v, w, Element(rng.gen_range(0..alg.size())));
        }
    }
    model
}
