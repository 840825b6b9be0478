//! Kripke frames and models over a finite residuated lattice, formula
//! evaluation, the validity notions, frame-class predicates and the
//! structural transformations (Boolean projection, crispification).

mod file;
mod transform;

pub use file::{parse_model_file, render_model_file};
pub use transform::{boolean_projection, crispify, CrispifyRow};

use crate::algebra::{Element, ResiduatedLattice};
use crate::formula::Formula;
use std::collections::BTreeMap;
use std::sync::Arc;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EvalError {
    #[error("variable `{0}` has no value and defaults are disabled")]
    UnknownVariable(String),
    #[error("unknown constant `@{0}`")]
    UnknownConstant(String),
    #[error("constants are disabled in this model")]
    ConstantsDisabled,
    #[error("unknown world `{0}`")]
    UnknownWorld(String),
    #[error("the frame is not a Boolean frame (R(w{0},w{1}) is not Boolean)")]
    NotBooleanFrame(usize, usize),
    #[error("the algebra has no unique coatom")]
    NoUniqueCoatom,
    #[error("model file error: {0}")]
    File(String),
}

/// Frame classes, by the range of the accessibility relation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum FrameClass {
    All,
    Idempotent,
    Boolean,
    Crisp,
}

impl FrameClass {
    /// Elements the accessibility relation may take in this class.
    pub fn allowed(self, alg: &ResiduatedLattice) -> Vec<Element> {
        match self {
            FrameClass::All => alg.elements().collect(),
            FrameClass::Idempotent => alg.elements().filter(|&a| alg.is_idempotent(a)).collect(),
            FrameClass::Boolean => alg.elements().filter(|&a| alg.is_boolean(a)).collect(),
            FrameClass::Crisp => vec![alg.bottom(), alg.top()],
        }
    }

    pub fn parse(s: &str) -> Option<FrameClass> {
        match s {
            "all" => Some(FrameClass::All),
            "idem" | "idempotent" => Some(FrameClass::Idempotent),
            "boolean" => Some(FrameClass::Boolean),
            "crisp" => Some(FrameClass::Crisp),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            FrameClass::All => "all",
            FrameClass::Idempotent => "idem",
            FrameClass::Boolean => "boolean",
            FrameClass::Crisp => "crisp",
        }
    }
}

/// A finite frame: ordered worlds and a total A-valued accessibility table.
#[derive(Debug, Clone)]
pub struct KripkeFrame {
    pub algebra: Arc<ResiduatedLattice>,
    pub worlds: Vec<String>,
    r: Vec<Vec<Element>>,
}

impl KripkeFrame {
    pub fn new(algebra: Arc<ResiduatedLattice>, worlds: Vec<String>) -> KripkeFrame {
        let n = worlds.len();
        let zero = algebra.bottom();
        KripkeFrame {
            algebra,
            worlds,
            r: vec![vec![zero; n]; n],
        }
    }

    pub fn n_worlds(&self) -> usize {
        self.worlds.len()
    }

    pub fn world_index(&self, name: &str) -> Result<usize, EvalError> {
        self.worlds
            .iter()
            .position(|w| w == name)
            .ok_or_else(|| EvalError::UnknownWorld(name.to_string()))
    }

    pub fn r(&self, from: usize, to: usize) -> Element {
        self.r[from][to]
    }

    pub fn set_r(&mut self, from: usize, to: usize, value: Element) {
        self.r[from][to] = value;
    }

    /// All classes this frame belongs to, computed from the range of R.
    pub fn frame_classes(&self) -> Vec<FrameClass> {
        let alg = &*self.algebra;
        let range: Vec<Element> = self
            .r
            .iter()
            .flat_map(|row| row.iter().copied())
            .collect();
        let mut out = vec![FrameClass::All];
        if range.iter().all(|&a| alg.is_idempotent(a)) {
            out.push(FrameClass::Idempotent);
        }
        if range.iter().all(|&a| alg.is_boolean(a)) {
            out.push(FrameClass::Boolean);
        }
        if range.iter().all(|&a| a == alg.bottom() || a == alg.top()) {
            out.push(FrameClass::Crisp);
        }
        out
    }

    pub fn in_class(&self, class: FrameClass) -> bool {
        self.frame_classes().contains(&class)
    }
}

/// A Kripke model: frame, valuation, default value for unmentioned
/// variables (the diagram convention is default 1), constants toggle.
#[derive(Debug, Clone)]
pub struct KripkeModel {
    pub frame: KripkeFrame,
    valuation: BTreeMap<(String, usize), Element>,
    pub default: Option<Element>,
    pub constants: bool,
}

impl KripkeModel {
    pub fn new(frame: KripkeFrame) -> KripkeModel {
        let default = frame.algebra.top();
        KripkeModel {
            frame,
            valuation: BTreeMap::new(),
            default: Some(default),
            constants: false,
        }
    }

    pub fn algebra(&self) -> &Arc<ResiduatedLattice> {
        &self.frame.algebra
    }

    pub fn with_constants(mut self, on: bool) -> KripkeModel {
        self.constants = on;
        self
    }

    pub fn set_value(&mut self, var: &str, world: usize, value: Element) {
        self.valuation.insert((var.to_string(), world), value);
    }

    pub fn value(&self, var: &str, world: usize) -> Result<Element, EvalError> {
        if let Some(&v) = self.valuation.get(&(var.to_string(), world)) {
            return Ok(v);
        }
        self.default
            .ok_or_else(|| EvalError::UnknownVariable(var.to_string()))
    }

    pub fn valuation_entries(&self) -> impl Iterator<Item = (&(String, usize), &Element)> {
        self.valuation.iter()
    }

    /// Evaluates a formula at a world. `□` is the meet over all worlds of
    /// `R(w,w') → V(φ,w')` (1 when every successor value is 0-related),
    /// `◇` the join of fusions (0 over an empty successor set).
    pub fn eval(&self, f: &Formula, world: usize) -> Result<Element, EvalError> {
        let alg = &*self.frame.algebra;
        Ok(match f {
            Formula::Var(v) => self.value(v, world)?,
            Formula::Zero => alg.bottom(),
            Formula::One => alg.top(),
            Formula::Const(label) => {
                if !self.constants {
                    return Err(EvalError::ConstantsDisabled);
                }
                alg.by_label(label)
                    .map_err(|_| EvalError::UnknownConstant(label.clone()))?
            }
            Formula::And(a, b) => alg.meet(self.eval(a, world)?, self.eval(b, world)?),
            Formula::Or(a, b) => alg.join(self.eval(a, world)?, self.eval(b, world)?),
            Formula::Fusion(a, b) => alg.fus(self.eval(a, world)?, self.eval(b, world)?),
            Formula::Implies(a, b) => alg.res(self.eval(a, world)?, self.eval(b, world)?),
            Formula::Box(a) => {
                let mut acc = alg.top();
                for w2 in 0..self.frame.n_worlds() {
                    let v = self.eval(a, w2)?;
                    acc = alg.meet(acc, alg.res(self.frame.r(world, w2), v));
                }
                acc
            }
            Formula::Diamond(a) => {
                let mut acc = alg.bottom();
                for w2 in 0..self.frame.n_worlds() {
                    let v = self.eval(a, w2)?;
                    acc = alg.join(acc, alg.fus(self.frame.r(world, w2), v));
                }
                acc
            }
        })
    }

    /// `w ⊨¹ φ`: the formula evaluates to 1 at the world.
    pub fn valid_at(&self, f: &Formula, world: usize) -> Result<bool, EvalError> {
        Ok(self.eval(f, world)? == self.frame.algebra.top())
    }

    /// `M ⊨¹ φ`: valid at every world.
    pub fn valid_in_model(&self, f: &Formula) -> Result<bool, EvalError> {
        for w in 0..self.frame.n_worlds() {
            if !self.valid_at(f, w)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `⊨⁺`: the formula is nonzero at every world.
    pub fn positively_valid(&self, f: &Formula) -> Result<bool, EvalError> {
        for w in 0..self.frame.n_worlds() {
            if self.eval(f, w)? == self.frame.algebra.bottom() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// A model is modally witnessed for a set of formulas when the value
    /// of each boxed subformula is attained at some successor.
    pub fn is_modally_witnessed(&self, formulas: &[Formula]) -> Result<bool, EvalError> {
        let alg = &*self.frame.algebra;
        let mut boxed: Vec<&Formula> = Vec::new();
        fn collect<'a>(f: &'a Formula, out: &mut Vec<&'a Formula>) {
            if let Formula::Box(a) = f {
                out.push(a);
            }
            for c in f.children() {
                collect(c, out);
            }
        }
        for f in formulas {
            collect(f, &mut boxed);
        }
        for sub in boxed {
            for w in 0..self.frame.n_worlds() {
                let value = self.eval(&sub.clone().boxed(), w)?;
                let mut attained = false;
                for w2 in 0..self.frame.n_worlds() {
                    let v = self.eval(sub, w2)?;
                    if alg.res(self.frame.r(w, w2), v) == value {
                        attained = true;
                        break;
                    }
                }
                if !attained {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}
