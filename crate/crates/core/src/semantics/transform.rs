//! Structural model transformations: projecting a Boolean model to a
//! family of crisp models along the direct factors of the algebra, and
//! replacing a model with its crisp submodel.

use super::{EvalError, KripkeFrame, KripkeModel};
use crate::algebra::{boolean_decomposition, Element};
use crate::formula::Formula;
use std::sync::Arc;

/// Converts a Boolean Kripke model over A into one crisp model per
/// directly indecomposable factor: `R_i(w,w') = 1` when `R(w,w')`
/// projects to the factor's top, else `0`; valuations are copied. The
/// projected models live over the same algebra A, and satisfy
/// `π_i(V(φ,w)) = π_i(V_i(φ,w))` for every formula and world.
pub fn boolean_projection(model: &KripkeModel) -> Result<Vec<KripkeModel>, EvalError> {
    let alg = model.algebra().clone();
    let n = model.frame.n_worlds();
    for w in 0..n {
        for w2 in 0..n {
            if !alg.is_boolean(model.frame.r(w, w2)) {
                return Err(EvalError::NotBooleanFrame(w, w2));
            }
        }
    }
    let decomp = boolean_decomposition(&alg)
        .map_err(|e| EvalError::File(format!("decomposition failed: {e}")))?;
    let mut out = Vec::new();
    for (i, factor) in decomp.factors.iter().enumerate() {
        let mut frame = KripkeFrame::new(alg.clone(), model.frame.worlds.clone());
        for w in 0..n {
            for w2 in 0..n {
                let projected = decomp.project(i, model.frame.r(w, w2));
                let crisp = if projected == factor.top() {
                    alg.top()
                } else {
                    alg.bottom()
                };
                frame.set_r(w, w2, crisp);
            }
        }
        let mut m = KripkeModel::new(frame).with_constants(model.constants);
        m.default = model.default;
        for ((var, w), &v) in model.valuation_entries() {
            m.set_value(var, *w, v);
        }
        out.push(m);
    }
    Ok(out)
}

/// One row of a crispification report.
#[derive(Debug, Clone)]
pub struct CrispifyRow {
    pub formula: Formula,
    /// Value of `□(k̄∨φ) → (k̄∨□φ)` at the world in the original model.
    pub axiom_value: Element,
    /// `V(□φ, w)` in the original model.
    pub box_value: Element,
    /// The crisp meet `⋀{V(φ, w') : R(w, w') = 1}` with the values taken
    /// in the original model (statement 2 of the crispness lemma).
    pub crisp_box_value: Element,
}

impl CrispifyRow {
    pub fn axiom_holds(&self, alg: &crate::algebra::ResiduatedLattice) -> bool {
        self.axiom_value == alg.top()
    }

    pub fn agrees(&self) -> bool {
        self.box_value == self.crisp_box_value
    }
}

/// Builds the crisp submodel (`R' = 1` where `R = 1`, else `0`) and
/// reports, per formula, the crispness axiom value at `w` and whether the
/// box value survives the replacement. Needs a unique coatom and
/// canonical constants.
pub fn crispify(
    model: &KripkeModel,
    world: usize,
    formulas: &[Formula],
) -> Result<(KripkeModel, Vec<CrispifyRow>), EvalError> {
    let alg: Arc<_> = model.algebra().clone();
    let Some(k) = alg.unique_coatom() else {
        return Err(EvalError::NoUniqueCoatom);
    };
    let k_const = Formula::Const(alg.label(k).to_string());
    let n = model.frame.n_worlds();
    let mut frame = KripkeFrame::new(alg.clone(), model.frame.worlds.clone());
    for w in 0..n {
        for w2 in 0..n {
            let v = if model.frame.r(w, w2) == alg.top() {
                alg.top()
            } else {
                alg.bottom()
            };
            frame.set_r(w, w2, v);
        }
    }
    let mut crisp = KripkeModel::new(frame).with_constants(true);
    crisp.default = model.default;
    for ((var, w), &v) in model.valuation_entries() {
        crisp.set_value(var, *w, v);
    }
    let mut rows = Vec::new();
    let checked = KripkeModel {
        constants: true,
        ..model.clone()
    };
    for f in formulas {
        let axiom = k_const
            .clone()
            .or(f.clone())
            .boxed()
            .implies(k_const.clone().or(f.clone().boxed()));
        let axiom_value = checked.eval(&axiom, world)?;
        let box_value = checked.eval(&f.clone().boxed(), world)?;
        let crisp_box_value = alg.meet_all(
            (0..n)
                .filter(|&w2| model.frame.r(world, w2) == alg.top())
                .map(|w2| checked.eval(f, w2))
                .collect::<Result<Vec<_>, _>>()?,
        );
        rows.push(CrispifyRow {
            formula: f.clone(),
            axiom_value,
            box_value,
            crisp_box_value,
        });
    }
    Ok((crisp, rows))
}
