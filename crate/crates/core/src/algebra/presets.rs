//! Built-in algebras: Łukasiewicz and Gödel chains, the two-element
//! Boolean algebra, the weak nilpotent minimum chain and the six-element
//! MTL chain, plus direct products and ordinal sums.

use super::build::{build_from_fns, build_from_tables};
use super::{AlgebraError, ResiduatedLattice};

/// Label for the rational m/(n-1): a short decimal when exact, else a
/// reduced fraction such as `1/3`.
fn chain_label(m: usize, d: usize) -> String {
    if m == 0 {
        return "0".into();
    }
    if m == d {
        return "1".into();
    }
    // decimal when the reduced denominator divides 100
    let g = gcd(m, d);
    let (num, den) = (m / g, d / g);
    if 100 % den == 0 {
        let scaled = num * (100 / den);
        if scaled % 10 == 0 {
            format!("0.{}", scaled / 10)
        } else {
            format!("0.{scaled:02}")
        }
    } else {
        format!("{num}/{den}")
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn chain_labels(n: usize) -> Vec<String> {
    (0..n).map(|m| chain_label(m, n - 1)).collect()
}

/// The n-element MV chain: `x ⊙ y = max{0, x + y − 1}` on {m/(n−1)}.
pub fn lukasiewicz(n: usize) -> Result<ResiduatedLattice, AlgebraError> {
    if n < 2 {
        return Err(AlgebraError::BadParam(format!(
            "lukasiewicz needs n >= 2, got {n}"
        )));
    }
    build_from_fns(
        &format!("lukasiewicz({n})"),
        chain_labels(n),
        |i, j| i <= j,
        move |i, j| (i + j).saturating_sub(n - 1),
    )
}

/// The n-element Gödel chain: fusion is the minimum.
pub fn godel(n: usize) -> Result<ResiduatedLattice, AlgebraError> {
    if n < 2 {
        return Err(AlgebraError::BadParam(format!(
            "godel needs n >= 2, got {n}"
        )));
    }
    build_from_fns(
        &format!("godel({n})"),
        chain_labels(n),
        |i, j| i <= j,
        |i, j| i.min(j),
    )
}

/// The two-element Boolean algebra.
pub fn boolean2() -> ResiduatedLattice {
    build_from_fns(
        "boolean2",
        vec!["0".into(), "1".into()],
        |i, j| i <= j,
        |i, j| i.min(j),
    )
    .expect("boolean2 is valid")
}

/// The five-element weak nilpotent minimum chain over {0, 0.25, 0.5, 0.75, 1},
/// with negation table n = (1, 0.75, 0.25, 0.25, 0),
/// `x⊙y = 0` if `x ≤ n(y)` else `x∧y`.
pub fn wnm5() -> ResiduatedLattice {
    let neg = [4usize, 3, 1, 1, 0];
    build_from_fns(
        "wnm5",
        chain_labels(5),
        |i, j| i <= j,
        move |i, j| if i <= neg[j] { 0 } else { i.min(j) },
    )
    .expect("wnm5 is valid")
}

/// The six-element MTL chain 0 < a < b < c < d < 1 with the fusion table
///
/// ```text
///   ⊙ | 0 a b c d 1
///   a | 0 a a a a a
///   b | 0 a a a b b
///   c | 0 a a c c c
///   d | 0 a b c d d
/// ```
pub fn mtl6() -> ResiduatedLattice {
    let labels: Vec<String> = ["0", "a", "b", "c", "d", "1"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    #[rustfmt::skip]
    let fus = vec![
        vec![0, 0, 0, 0, 0, 0],
        vec![0, 1, 1, 1, 1, 1],
        vec![0, 1, 1, 1, 2, 2],
        vec![0, 1, 1, 3, 3, 3],
        vec![0, 1, 2, 3, 4, 4],
        vec![0, 1, 2, 3, 4, 5],
    ];
    let n = 6;
    let leq = (0..n)
        .map(|i| (0..n).map(|j| i <= j).collect())
        .collect();
    build_from_tables("mtl6", labels, leq, fus).expect("mtl6 is valid")
}

/// Direct product; elements are labelled `(x,y)` and ordered pairwise,
/// first coordinate outermost.
pub fn product(
    a: &ResiduatedLattice,
    b: &ResiduatedLattice,
) -> Result<ResiduatedLattice, AlgebraError> {
    let (na, nb) = (a.size(), b.size());
    let mut labels = Vec::with_capacity(na * nb);
    for i in 0..na {
        for j in 0..nb {
            labels.push(format!(
                "({},{})",
                a.labels()[i].clone(),
                b.labels()[j].clone()
            ));
        }
    }
    let at = |p: usize| (p / nb, p % nb);
    let leq_a = a.leq_table().clone();
    let leq_b = b.leq_table().clone();
    let fus_a = a.fusion_table().clone();
    let fus_b = b.fusion_table().clone();
    build_from_fns(
        &format!("product({},{})", a.name(), b.name()),
        labels,
        |p, q| {
            let ((pa, pb), (qa, qb)) = (at(p), at(q));
            leq_a[pa][qa] && leq_b[pb][qb]
        },
        |p, q| {
            let ((pa, pb), (qa, qb)) = (at(p), at(q));
            fus_a[pa][qa] * nb + fus_b[pb][qb]
        },
    )
}

/// Ordinal sum: `a` stacked below `b`, the top of `a` identified with the
/// bottom of `b` (the shared element keeps `a`'s top label). Fusion within
/// a component is the component's; across components it is the minimum.
/// Labels from `b` that collide with ones from `a` get a `'` suffix.
pub fn ordinal_sum(
    a: &ResiduatedLattice,
    b: &ResiduatedLattice,
) -> Result<ResiduatedLattice, AlgebraError> {
    let na = a.size();
    let nb = b.size();
    let sep = na - 1; // index of the shared element
    let mut labels: Vec<String> = a.labels().to_vec();
    for (j, lab) in b.labels().iter().enumerate() {
        if j == b.bottom().0 {
            continue;
        }
        let mut l = lab.clone();
        while labels.contains(&l) {
            l.push('\'');
        }
        labels.push(l);
    }
    // Sum index -> component element: 0..na comes from a (top(a) = sep is
    // the shared element), na.. come from b's non-bottom elements in order.
    let b_elems: Vec<usize> = (0..nb).filter(|&j| j != b.bottom().0).collect();
    let in_a = move |p: usize| p < na;
    let to_b = {
        let b_elems = b_elems.clone();
        let b_bottom = b.bottom().0;
        move |p: usize| {
            if p == sep {
                b_bottom
            } else {
                b_elems[p - na]
            }
        }
    };
    let from_b = {
        let b_elems = b_elems.clone();
        let b_bottom = b.bottom().0;
        move |e: usize| {
            if e == b_bottom {
                sep
            } else {
                na + b_elems.iter().position(|&x| x == e).unwrap()
            }
        }
    };
    let fus_a = a.fusion_table().clone();
    let fus_b = b.fusion_table().clone();
    let leq_a = a.leq_table().clone();
    let leq_b = b.leq_table().clone();
    let (to_b2, from_b2) = (to_b.clone(), from_b);
    build_from_fns(
        &format!("ordinal_sum({},{})", a.name(), b.name()),
        labels,
        move |p, q| match (in_a(p), in_a(q)) {
            (true, true) => leq_a[p][q],
            (true, false) => true,  // a-part (incl. separator) below upper b-part
            (false, true) => false, // upper b-part never below a-part
            (false, false) => leq_b[to_b(p)][to_b(q)],
        },
        move |p, q| match (in_a(p), in_a(q)) {
            (true, true) => fus_a[p][q],
            (false, false) => from_b2(fus_b[to_b2(p)][to_b2(q)]),
            // across components: the minimum, which is the lower-part element
            (true, false) => p,
            (false, true) => q,
        },
    )
}

/// Looks up a preset by name, e.g. `lukasiewicz(3)`, `mtl6`,
/// `product(boolean2,lukasiewicz(3))`.
pub fn preset(expr: &str) -> Result<ResiduatedLattice, AlgebraError> {
    let expr = expr.trim();
    let (head, args) = match expr.find('(') {
        Some(p) if expr.ends_with(')') => (&expr[..p], Some(&expr[p + 1..expr.len() - 1])),
        _ => (expr, None),
    };
    let split2 = |s: &str| -> Result<(String, String), AlgebraError> {
        let mut depth = 0usize;
        for (i, c) in s.char_indices() {
            match c {
                '(' => depth += 1,
                ')' => depth = depth.saturating_sub(1),
                ',' if depth == 0 => {
                    return Ok((s[..i].trim().to_string(), s[i + 1..].trim().to_string()))
                }
                _ => {}
            }
        }
        Err(AlgebraError::BadParam(format!("expected two arguments in `{s}`")))
    };
    let nat = |s: &str| -> Result<usize, AlgebraError> {
        s.trim()
            .parse::<usize>()
            .map_err(|_| AlgebraError::BadParam(format!("expected a number, got `{s}`")))
    };
    match (head, args) {
        ("lukasiewicz", Some(a)) => lukasiewicz(nat(a)?),
        ("godel", Some(a)) => godel(nat(a)?),
        ("boolean2", None) => Ok(boolean2()),
        ("wnm5", None) => Ok(wnm5()),
        ("mtl6", None) => Ok(mtl6()),
        ("product", Some(a)) => {
            let (x, y) = split2(a)?;
            product(&preset(&x)?, &preset(&y)?)
        }
        ("ordinal_sum", Some(a)) => {
            let (x, y) = split2(a)?;
            ordinal_sum(&preset(&x)?, &preset(&y)?)
        }
        _ => Err(AlgebraError::UnknownPreset(expr.to_string())),
    }
}
