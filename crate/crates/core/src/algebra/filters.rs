//! Congruence filters, quotients and direct decompositions.
//!
//! In these algebras filters (upward-closed, fusion-closed sets containing
//! the top) are exactly the congruence filters, so quotients can be taken
//! along any generated filter.

use super::build::build_from_tables;
use super::{AlgebraError, Element, ResiduatedLattice};

/// A congruence filter of a specific algebra, kept as a sorted member list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Filter {
    pub members: Vec<Element>,
}

impl Filter {
    pub fn contains(&self, a: Element) -> bool {
        self.members.binary_search(&a).is_ok()
    }

    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }
}

/// Least filter containing `seed`: close under fusion and upwards.
pub fn filter_generated(alg: &ResiduatedLattice, seed: &[Element]) -> Filter {
    let n = alg.size();
    let mut in_f = vec![false; n];
    in_f[alg.top().0] = true;
    for &s in seed {
        in_f[s.0] = true;
    }
    loop {
        let mut changed = false;
        let current: Vec<usize> = (0..n).filter(|&i| in_f[i]).collect();
        for &x in &current {
            for &y in &current {
                let f = alg.fus(Element(x), Element(y)).0;
                if !in_f[f] {
                    in_f[f] = true;
                    changed = true;
                }
            }
            for (z, slot) in in_f.iter_mut().enumerate() {
                if !*slot && alg.leq(Element(x), Element(z)) {
                    *slot = true;
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    Filter {
        members: (0..n).filter(|&i| in_f[i]).map(Element).collect(),
    }
}

/// Quotient by a congruence filter: classes are `x ≡ y  iff  x↔y ∈ F`.
/// Returns the re-validated quotient and the projection as an index map.
/// Class labels are the least member's label in brackets.
pub fn quotient(
    alg: &ResiduatedLattice,
    filter: &Filter,
) -> Result<(ResiduatedLattice, Vec<usize>), AlgebraError> {
    let n = alg.size();
    let equiv = |x: Element, y: Element| filter.contains(alg.iff(x, y));
    let mut class_of = vec![usize::MAX; n];
    let mut reps: Vec<Element> = Vec::new();
    for (i, slot) in class_of.iter_mut().enumerate() {
        let e = Element(i);
        match reps.iter().position(|&r| equiv(r, e)) {
            Some(c) => *slot = c,
            None => {
                *slot = reps.len();
                reps.push(e);
            }
        }
    }
    let m = reps.len();
    let labels: Vec<String> = reps
        .iter()
        .map(|&r| format!("[{}]", alg.label(r)))
        .collect();
    let leq = (0..m)
        .map(|i| {
            (0..m)
                // class order: [x] ≤ [y] iff x→y ∈ F
                .map(|j| filter.contains(alg.res(reps[i], reps[j])))
                .collect()
        })
        .collect();
    let fusion = (0..m)
        .map(|i| {
            (0..m)
                .map(|j| class_of[alg.fus(reps[i], reps[j]).0])
                .collect()
        })
        .collect();
    let q = build_from_tables(&format!("{}/F", alg.name()), labels, leq, fusion)?;
    Ok((q, class_of))
}

/// Searches for an isomorphism between two algebras by brute force over
/// bijections; returns the index map `a -> b` if one exists.
pub fn find_isomorphism(a: &ResiduatedLattice, b: &ResiduatedLattice) -> Option<Vec<usize>> {
    if a.size() != b.size() {
        return None;
    }
    let n = a.size();
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn assign(
        a: &ResiduatedLattice,
        b: &ResiduatedLattice,
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
        i: usize,
    ) -> bool {
        let n = a.size();
        if i == n {
            return a.is_homomorphism(b, map);
        }
        for j in 0..n {
            if used[j] {
                continue;
            }
            // cheap pruning: preserve order against already-placed elements
            let ok = (0..i).all(|k| {
                a.leq(Element(k), Element(i)) == b.leq(Element(map[k]), Element(j))
                    && a.leq(Element(i), Element(k)) == b.leq(Element(j), Element(map[k]))
            });
            if !ok {
                continue;
            }
            map[i] = j;
            used[j] = true;
            if assign(a, b, map, used, i + 1) {
                return true;
            }
            used[j] = false;
            map[i] = usize::MAX;
        }
        false
    }
    if assign(a, b, &mut map, &mut used, 0) {
        Some(map)
    } else {
        None
    }
}

/// A direct decomposition into factors with only trivial Boolean elements,
/// together with the verified isomorphism witness.
#[derive(Debug, Clone)]
pub struct Decomposition {
    pub factors: Vec<ResiduatedLattice>,
    /// For each element of the original algebra, its image in each factor.
    pub projections: Vec<Vec<usize>>,
    /// Right inverse: factor-tuple -> original element, verified exhaustively.
    pub reassemble: std::collections::BTreeMap<Vec<usize>, usize>,
}

impl Decomposition {
    pub fn project(&self, factor: usize, a: Element) -> Element {
        Element(self.projections[a.0][factor])
    }
}

/// Splits an algebra along its Boolean elements until every factor is
/// directly indecomposable (only trivial Boolean elements). The product
/// of the factors is isomorphic to the input via the returned witness,
/// which is verified exhaustively.
pub fn boolean_decomposition(alg: &ResiduatedLattice) -> Result<Decomposition, AlgebraError> {
    // Find the first nontrivial Boolean element in index order.
    let split = alg
        .elements()
        .find(|&e| e != alg.bottom() && e != alg.top() && alg.is_boolean(e));
    let Some(e) = split else {
        let projections = (0..alg.size()).map(|i| vec![i]).collect();
        let reassemble = (0..alg.size()).map(|i| (vec![i], i)).collect();
        return Ok(Decomposition {
            factors: vec![alg.clone()],
            projections,
            reassemble,
        });
    };
    let not_e = alg.neg(e);
    // Quotients by the filters generated by ¬e and e give the two factors
    // (the first projection kills e-distinctions, mirroring the product
    // component that e flags as top).
    let (q1, p1) = quotient(alg, &filter_generated(alg, &[not_e]))?;
    let (q2, p2) = quotient(alg, &filter_generated(alg, &[e]))?;
    let d1 = boolean_decomposition(&q1)?;
    let d2 = boolean_decomposition(&q2)?;
    let mut factors = d1.factors.clone();
    factors.extend(d2.factors.clone());
    let projections: Vec<Vec<usize>> = (0..alg.size())
        .map(|i| {
            let mut row = d1.projections[p1[i]].clone();
            row.extend(d2.projections[p2[i]].clone());
            row
        })
        .collect();
    // The tuple map must be injective and surjective onto the full product
    // for the decomposition to be direct; verify and build the inverse.
    let mut reassemble = std::collections::BTreeMap::new();
    for (i, row) in projections.iter().enumerate() {
        if reassemble.insert(row.clone(), i).is_some() {
            return Err(AlgebraError::NotALattice(format!(
                "boolean decomposition of {} is not injective",
                alg.name()
            )));
        }
    }
    let product_size: usize = factors.iter().map(|f| f.size()).product();
    if product_size != alg.size() {
        return Err(AlgebraError::NotALattice(format!(
            "boolean decomposition of {} does not multiply back: {} vs {}",
            alg.name(),
            product_size,
            alg.size()
        )));
    }
    // Exhaustive homomorphism check of the tuple map on all pairs.
    for a in alg.elements() {
        for b in alg.elements() {
            for (k, f) in factors.iter().enumerate() {
                let (pa, pb) = (Element(projections[a.0][k]), Element(projections[b.0][k]));
                let ok = projections[alg.meet(a, b).0][k] == f.meet(pa, pb).0
                    && projections[alg.join(a, b).0][k] == f.join(pa, pb).0
                    && projections[alg.fus(a, b).0][k] == f.fus(pa, pb).0
                    && projections[alg.res(a, b).0][k] == f.res(pa, pb).0;
                if !ok {
                    return Err(AlgebraError::NotALattice(format!(
                        "boolean decomposition of {} is not homomorphic",
                        alg.name()
                    )));
                }
            }
        }
    }
    Ok(Decomposition {
        factors,
        projections,
        reassemble,
    })
}
