//! Model text format:
//!
//! ```text
//! algebra: lukasiewicz(3)      # preset or path to an algebra file
//! constants: on
//! worlds: w0 w1
//! default: 1
//! R: w0 w1 = 0.5               # absent entries are 0
//! val: p @ w1 = 0.5            # absent entries take the default
//! ```

use super::{EvalError, KripkeFrame, KripkeModel};
use crate::algebra::{parse_algebra_file, preset, ResiduatedLattice};
use std::sync::Arc;

/// Parses a model file. `load_file` resolves `algebra:` values that are
/// not presets (the CLI passes a filesystem reader; tests pass a stub).
pub fn parse_model_file(
    text: &str,
    load_file: &dyn Fn(&str) -> Result<String, String>,
) -> Result<KripkeModel, EvalError> {
    let mut algebra: Option<Arc<ResiduatedLattice>> = None;
    let mut constants = false;
    let mut worlds: Vec<String> = Vec::new();
    let mut default: Option<String> = Some("1".to_string());
    let mut r_entries: Vec<(String, String, String)> = Vec::new();
    let mut val_entries: Vec<(String, String, String)> = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fail = |msg: String| EvalError::File(format!("line {}: {}", lineno + 1, msg));
        if let Some(rest) = line.strip_prefix("algebra:") {
            let spec = rest.trim();
            let alg = match preset(spec) {
                Ok(a) => a,
                Err(_) => {
                    let contents = load_file(spec).map_err(&fail)?;
                    parse_algebra_file(&contents).map_err(|e| fail(e.to_string()))?
                }
            };
            algebra = Some(Arc::new(alg));
        } else if let Some(rest) = line.strip_prefix("constants:") {
            constants = match rest.trim() {
                "on" => true,
                "off" => false,
                other => return Err(fail(format!("constants must be on/off, got `{other}`"))),
            };
        } else if let Some(rest) = line.strip_prefix("worlds:") {
            worlds = rest.split_whitespace().map(str::to_string).collect();
        } else if let Some(rest) = line.strip_prefix("default:") {
            let v = rest.trim();
            default = if v == "none" {
                None
            } else {
                Some(v.to_string())
            };
        } else if let Some(rest) = line.strip_prefix("R:") {
            let (lhs, value) = rest
                .split_once('=')
                .ok_or_else(|| fail("expected `R: wi wj = label`".into()))?;
            let mut parts = lhs.split_whitespace();
            let (Some(w1), Some(w2), None) = (parts.next(), parts.next(), parts.next()) else {
                return Err(fail("expected `R: wi wj = label`".into()));
            };
            r_entries.push((w1.to_string(), w2.to_string(), value.trim().to_string()));
        } else if let Some(rest) = line.strip_prefix("val:") {
            let (lhs, value) = rest
                .split_once('=')
                .ok_or_else(|| fail("expected `val: var @ world = label`".into()))?;
            let (var, world) = lhs
                .split_once('@')
                .ok_or_else(|| fail("expected `val: var @ world = label`".into()))?;
            val_entries.push((
                var.trim().to_string(),
                world.trim().to_string(),
                value.trim().to_string(),
            ));
        } else {
            return Err(fail(format!("unexpected line `{line}`")));
        }
    }
    let algebra = algebra.ok_or_else(|| EvalError::File("missing `algebra:` line".into()))?;
    if worlds.is_empty() {
        return Err(EvalError::File("missing `worlds:` line".into()));
    }
    let lookup = |label: &str| {
        algebra
            .by_label(label)
            .map_err(|_| EvalError::UnknownConstant(label.to_string()))
    };
    let mut frame = KripkeFrame::new(algebra.clone(), worlds);
    for (w1, w2, value) in r_entries {
        let i = frame.world_index(&w1)?;
        let j = frame.world_index(&w2)?;
        frame.set_r(i, j, lookup(&value)?);
    }
    let mut model = KripkeModel::new(frame).with_constants(constants);
    model.default = match default {
        Some(label) => Some(lookup(&label)?),
        None => None,
    };
    for (var, world, value) in val_entries {
        let w = model.frame.world_index(&world)?;
        let v = lookup(&value)?;
        model.set_value(&var, w, v);
    }
    Ok(model)
}

/// Serializes a model so that verdicts round-trip through the same format.
/// Zero R-entries and default-valued variables are omitted.
pub fn render_model_file(model: &KripkeModel) -> String {
    let alg = model.algebra();
    let mut out = String::new();
    out.push_str(&format!("algebra: {}\n", alg.name()));
    out.push_str(&format!(
        "constants: {}\n",
        if model.constants { "on" } else { "off" }
    ));
    out.push_str(&format!("worlds: {}\n", model.frame.worlds.join(" ")));
    match model.default {
        Some(d) => {
            if d != alg.top() {
                out.push_str(&format!("default: {}\n", alg.label(d)));
            }
        }
        None => out.push_str("default: none\n"),
    }
    for w in 0..model.frame.n_worlds() {
        for w2 in 0..model.frame.n_worlds() {
            let v = model.frame.r(w, w2);
            if v != alg.bottom() {
                out.push_str(&format!(
                    "R: {} {} = {}\n",
                    model.frame.worlds[w],
                    model.frame.worlds[w2],
                    alg.label(v)
                ));
            }
        }
    }
    for ((var, w), &v) in model.valuation_entries() {
        if model.default == Some(v) {
            continue;
        }
        out.push_str(&format!(
            "val: {} @ {} = {}\n",
            var,
            model.frame.worlds[*w],
            alg.label(v)
        ));
    }
    out
}
