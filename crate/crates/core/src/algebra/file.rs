//! Text format for algebras, one per file:
//!
//! ```text
//! # comment
//! name: mtl6
//! universe: 0 a b c d 1
//! leq:
//! 1 1 1 1 1 1
//! 0 1 1 1 1 1
//! ...
//! fusion:
//! 0 0 0 0 0 0
//! 0 a a a a a
//! ...
//! ```

use super::{build_lattice, AlgebraError, ResiduatedLattice};

pub fn parse_algebra_file(text: &str) -> Result<ResiduatedLattice, AlgebraError> {
    let mut name = String::from("algebra");
    let mut universe: Vec<String> = Vec::new();
    let mut leq: Vec<Vec<bool>> = Vec::new();
    let mut fusion: Vec<Vec<String>> = Vec::new();
    #[derive(PartialEq)]
    enum Section {
        None,
        Leq,
        Fusion,
    }
    let mut section = Section::None;
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let fail = |msg: String| AlgebraError::File(format!("line {}: {}", lineno + 1, msg));
        if let Some(rest) = line.strip_prefix("name:") {
            name = rest.trim().to_string();
            section = Section::None;
        } else if let Some(rest) = line.strip_prefix("universe:") {
            universe = rest.split_whitespace().map(str::to_string).collect();
            section = Section::None;
        } else if let Some(rest) = line.strip_prefix("leq:") {
            section = Section::Leq;
            if !rest.trim().is_empty() {
                leq.push(parse_bool_row(rest, &fail)?);
            }
        } else if let Some(rest) = line.strip_prefix("fusion:") {
            section = Section::Fusion;
            if !rest.trim().is_empty() {
                fusion.push(rest.split_whitespace().map(str::to_string).collect());
            }
        } else {
            match section {
                Section::Leq => leq.push(parse_bool_row(line, &fail)?),
                Section::Fusion => {
                    fusion.push(line.split_whitespace().map(str::to_string).collect())
                }
                Section::None => return Err(fail(format!("unexpected line `{line}`"))),
            }
        }
    }
    if universe.is_empty() {
        return Err(AlgebraError::File("missing `universe:` line".into()));
    }
    build_lattice(&name, universe, leq, fusion)
}

fn parse_bool_row(
    line: &str,
    fail: &dyn Fn(String) -> AlgebraError,
) -> Result<Vec<bool>, AlgebraError> {
    line.split_whitespace()
        .map(|tok| match tok {
            "0" => Ok(false),
            "1" => Ok(true),
            other => Err(fail(format!("expected 0/1 in leq row, got `{other}`"))),
        })
        .collect()
}

/// Renders an algebra in the same text format.
pub fn render_algebra_file(alg: &ResiduatedLattice) -> String {
    let mut out = String::new();
    out.push_str(&format!("name: {}\n", alg.name()));
    out.push_str(&format!("universe: {}\n", alg.labels().join(" ")));
    out.push_str("leq:\n");
    for a in alg.elements() {
        let row: Vec<&str> = alg
            .elements()
            .map(|b| if alg.leq(a, b) { "1" } else { "0" })
            .collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out.push_str("fusion:\n");
    for a in alg.elements() {
        let row: Vec<String> = alg
            .elements()
            .map(|b| alg.label(alg.fus(a, b)).to_string())
            .collect();
        out.push_str(&row.join(" "));
        out.push('\n');
    }
    out
}
