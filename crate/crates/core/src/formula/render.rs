//! Canonical ASCII printer. `render ∘ parse` is the canonical form of the
//! input; `parse ∘ render` is the identity on ASTs. Negation, `<->` and
//! `+` patterns are re-sugared on the way out.

use super::Formula;

// Binding strengths, loosest to tightest (must mirror the parser).
const PREC_IFF: u8 = 0;
const PREC_IMP: u8 = 1;
const PREC_OR: u8 = 2;
const PREC_AND: u8 = 3;
const PREC_PLUS: u8 = 4;
const PREC_STAR: u8 = 5;
const PREC_UNARY: u8 = 6;

pub fn render(f: &Formula) -> String {
    let mut out = String::new();
    go(f, PREC_IFF, &mut out);
    out
}

/// `¬x` is `x → 0`.
fn as_neg(f: &Formula) -> Option<&Formula> {
    match f {
        Formula::Implies(a, b) if **b == Formula::Zero => Some(a),
        _ => None,
    }
}

/// `x ↔ y` is `(x→y) ⊙ (y→x)`.
fn as_iff(f: &Formula) -> Option<(&Formula, &Formula)> {
    match f {
        Formula::Fusion(l, r) => match (&**l, &**r) {
            (Formula::Implies(a, b), Formula::Implies(c, d)) if a == d && b == c => {
                Some((a, b))
            }
            _ => None,
        },
        _ => None,
    }
}

/// `x ⊕ y` is `¬(¬x ⊙ ¬y)`.
fn as_oplus(f: &Formula) -> Option<(&Formula, &Formula)> {
    let inner = as_neg(f)?;
    match inner {
        Formula::Fusion(l, r) => Some((as_neg(l)?, as_neg(r)?)),
        _ => None,
    }
}

fn go(f: &Formula, min_prec: u8, out: &mut String) {
    if let Some((a, b)) = as_iff(f) {
        return binary(a, b, " <-> ", PREC_IFF, PREC_IMP, PREC_IMP, min_prec, out);
    }
    if let Some((a, b)) = as_oplus(f) {
        return binary(a, b, " + ", PREC_PLUS, PREC_PLUS, PREC_STAR, min_prec, out);
    }
    if let Some(a) = as_neg(f) {
        let need = min_prec > PREC_UNARY;
        if need {
            out.push('(');
        }
        out.push('~');
        go(a, PREC_UNARY, out);
        if need {
            out.push(')');
        }
        return;
    }
    match f {
        Formula::Var(v) => out.push_str(v),
        Formula::Zero => out.push('0'),
        Formula::One => out.push('1'),
        Formula::Const(c) => {
            out.push('@');
            out.push_str(c);
        }
        Formula::And(a, b) => binary(a, b, " /\\ ", PREC_AND, PREC_AND, PREC_PLUS, min_prec, out),
        Formula::Or(a, b) => binary(a, b, " \\/ ", PREC_OR, PREC_OR, PREC_AND, min_prec, out),
        Formula::Fusion(a, b) => {
            binary(a, b, " * ", PREC_STAR, PREC_STAR, PREC_UNARY, min_prec, out)
        }
        Formula::Implies(a, b) => {
            // right-associative
            binary(a, b, " -> ", PREC_IMP, PREC_OR, PREC_IMP, min_prec, out)
        }
        Formula::Box(a) => {
            let need = min_prec > PREC_UNARY;
            if need {
                out.push('(');
            }
            out.push_str("[]");
            go(a, PREC_UNARY, out);
            if need {
                out.push(')');
            }
        }
        Formula::Diamond(a) => {
            let need = min_prec > PREC_UNARY;
            if need {
                out.push('(');
            }
            out.push_str("<>");
            go(a, PREC_UNARY, out);
            if need {
                out.push(')');
            }
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn binary(
    a: &Formula,
    b: &Formula,
    op: &str,
    prec: u8,
    left_prec: u8,
    right_prec: u8,
    min_prec: u8,
    out: &mut String,
) {
    let need = min_prec > prec;
    if need {
        out.push('(');
    }
    go(a, left_prec, out);
    out.push_str(op);
    go(b, right_prec, out);
    if need {
        out.push(')');
    }
}
