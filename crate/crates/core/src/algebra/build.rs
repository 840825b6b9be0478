//! Construction and validation of residuated lattices from labels, an
//! order matrix and a fusion table.

use super::{AlgebraError, Element, ResiduatedLattice};

/// Builds and validates a residuated lattice. `leq` is the order as a
/// boolean matrix, `fusion` a table of labels. Meet and join are derived
/// from `leq`; the residuum is derived as `a → c := ⋁{b : a⊙b ≤ c}` and
/// the adjunction `a⊙b ≤ c ⇔ b ≤ a→c` is verified for every triple.
pub fn build_lattice(
    name: &str,
    labels: Vec<String>,
    leq: Vec<Vec<bool>>,
    fusion_labels: Vec<Vec<String>>,
) -> Result<ResiduatedLattice, AlgebraError> {
    let n = labels.len();
    if n == 0 {
        return Err(AlgebraError::NotALattice("empty universe".into()));
    }
    {
        let mut sorted = labels.clone();
        sorted.sort();
        sorted.dedup();
        if sorted.len() != n {
            return Err(AlgebraError::NotALattice("duplicate labels".into()));
        }
    }
    if leq.len() != n || leq.iter().any(|row| row.len() != n) {
        return Err(AlgebraError::NotALattice(format!(
            "leq matrix must be {n}x{n}"
        )));
    }
    if fusion_labels.len() != n || fusion_labels.iter().any(|row| row.len() != n) {
        return Err(AlgebraError::NotAMonoid(format!(
            "fusion matrix must be {n}x{n}"
        )));
    }
    let idx = |label: &str| -> Result<usize, AlgebraError> {
        labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| AlgebraError::UnknownLabel(label.to_string()))
    };
    let mut fusion = vec![vec![0usize; n]; n];
    for i in 0..n {
        for j in 0..n {
            fusion[i][j] = idx(&fusion_labels[i][j])?;
        }
    }
    build_from_tables(name, labels, leq, fusion)
}

/// Index-level constructor shared by `build_lattice`, the presets and the
/// quotient/product machinery.
pub(crate) fn build_from_tables(
    name: &str,
    labels: Vec<String>,
    leq: Vec<Vec<bool>>,
    fusion: Vec<Vec<usize>>,
) -> Result<ResiduatedLattice, AlgebraError> {
    let n = labels.len();
    let lbl = |i: usize| labels[i].clone();

    // Partial order.
    for i in 0..n {
        if !leq[i][i] {
            return Err(AlgebraError::NotALattice(format!(
                "leq not reflexive at {}",
                lbl(i)
            )));
        }
        for j in 0..n {
            if i != j && leq[i][j] && leq[j][i] {
                return Err(AlgebraError::NotALattice(format!(
                    "leq not antisymmetric at {}, {}",
                    lbl(i),
                    lbl(j)
                )));
            }
            for k in 0..n {
                if leq[i][j] && leq[j][k] && !leq[i][k] {
                    return Err(AlgebraError::NotALattice(format!(
                        "leq not transitive at {}, {}, {}",
                        lbl(i),
                        lbl(j),
                        lbl(k)
                    )));
                }
            }
        }
    }

    // Bounds.
    let bottom = (0..n)
        .find(|&b| (0..n).all(|x| leq[b][x]))
        .ok_or_else(|| AlgebraError::NotALattice("no bottom element".into()))?;
    let top = (0..n)
        .find(|&t| (0..n).all(|x| leq[x][t]))
        .ok_or_else(|| AlgebraError::NotALattice("no top element".into()))?;

    // Meets and joins: every pair needs a greatest lower / least upper bound.
    let mut meet = vec![vec![0usize; n]; n];
    let mut join = vec![vec![0usize; n]; n];
    for i in 0..n {
        for j in 0..n {
            let lowers: Vec<usize> = (0..n).filter(|&z| leq[z][i] && leq[z][j]).collect();
            let glb = lowers
                .iter()
                .copied()
                .find(|&m| lowers.iter().all(|&z| leq[z][m]));
            match glb {
                Some(m) => meet[i][j] = m,
                None => {
                    return Err(AlgebraError::NotALattice(format!(
                        "pair {}, {} has no meet",
                        lbl(i),
                        lbl(j)
                    )))
                }
            }
            let uppers: Vec<usize> = (0..n).filter(|&z| leq[i][z] && leq[j][z]).collect();
            let lub = uppers
                .iter()
                .copied()
                .find(|&m| uppers.iter().all(|&z| leq[m][z]));
            match lub {
                Some(m) => join[i][j] = m,
                None => {
                    return Err(AlgebraError::NotALattice(format!(
                        "pair {}, {} has no join",
                        lbl(i),
                        lbl(j)
                    )))
                }
            }
        }
    }

    // Commutative monoid with unit top.
    for i in 0..n {
        if fusion[i][top] != i || fusion[top][i] != i {
            return Err(AlgebraError::NotAMonoid(format!(
                "1 is not a unit at {}",
                lbl(i)
            )));
        }
        for j in 0..n {
            if fusion[i][j] != fusion[j][i] {
                return Err(AlgebraError::NotAMonoid(format!(
                    "fusion not commutative at {}, {}",
                    lbl(i),
                    lbl(j)
                )));
            }
            for k in 0..n {
                if fusion[fusion[i][j]][k] != fusion[i][fusion[j][k]] {
                    return Err(AlgebraError::NotAMonoid(format!(
                        "fusion not associative at {}, {}, {}",
                        lbl(i),
                        lbl(j),
                        lbl(k)
                    )));
                }
            }
        }
    }

    // Residuum: a → c := ⋁{b : a⊙b ≤ c}.
    let mut residuum = vec![vec![0usize; n]; n];
    for a in 0..n {
        for c in 0..n {
            let mut r = bottom;
            for b in 0..n {
                if leq[fusion[a][b]][c] {
                    r = join[r][b];
                }
            }
            residuum[a][c] = r;
        }
    }

    // Adjunction (2.1) for every triple. This also rejects fusion tables
    // that admit no residuum (the derived join is then not itself a
    // witness, which surfaces as a failed triple).
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let lhs = leq[fusion[a][b]][c];
                let rhs = leq[b][residuum[a][c]];
                if lhs != rhs {
                    return Err(AlgebraError::ResiduationFails {
                        a: lbl(a),
                        b: lbl(b),
                        c: lbl(c),
                        detail: if lhs {
                            format!("a⊙b ≤ c but b ≰ a→c = {}", lbl(residuum[a][c]))
                        } else {
                            format!("b ≤ a→c = {} but a⊙b ≰ c", lbl(residuum[a][c]))
                        },
                    });
                }
            }
        }
    }

    // Laws (2.3) and (2.4) hold in every residuated lattice; assert them
    // on construction as a guard against table bugs.
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let l23 = residuum[a][meet[b][c]] == meet[residuum[a][b]][residuum[a][c]];
                let l24 = residuum[join[a][b]][c] == meet[residuum[a][c]][residuum[b][c]];
                if !l23 || !l24 {
                    return Err(AlgebraError::ResiduationFails {
                        a: lbl(a),
                        b: lbl(b),
                        c: lbl(c),
                        detail: "derived residuum violates (2.3)/(2.4)".into(),
                    });
                }
            }
        }
    }

    Ok(ResiduatedLattice {
        name: name.to_string(),
        labels,
        leq,
        meet,
        join,
        fusion,
        residuum,
        bottom,
        top,
    })
}

/// Builds an algebra from element-level closures; used by presets.
pub(crate) fn build_from_fns(
    name: &str,
    labels: Vec<String>,
    leq_fn: impl Fn(usize, usize) -> bool,
    fus_fn: impl Fn(usize, usize) -> usize,
) -> Result<ResiduatedLattice, AlgebraError> {
    let n = labels.len();
    let leq = (0..n)
        .map(|i| (0..n).map(|j| leq_fn(i, j)).collect())
        .collect();
    let fusion = (0..n)
        .map(|i| (0..n).map(|j| fus_fn(i, j)).collect())
        .collect();
    build_from_tables(name, labels, leq, fusion)
}

/// Exhaustive check that two algebras have identical tables (not just
/// isomorphic): same labels, order and fusion.
pub fn same_tables(a: &ResiduatedLattice, b: &ResiduatedLattice) -> bool {
    a.labels == b.labels && a.leq == b.leq && a.fusion == b.fusion
}

impl ResiduatedLattice {
    /// Renames an algebra, keeping all tables.
    pub fn renamed(mut self, name: &str) -> Self {
        self.name = name.to_string();
        self
    }

    pub(crate) fn leq_table(&self) -> &Vec<Vec<bool>> {
        &self.leq
    }

    pub(crate) fn fusion_table(&self) -> &Vec<Vec<usize>> {
        &self.fusion
    }

    /// Checks that `f: self → other` (as an index map) is a homomorphism
    /// for ∧, ∨, ⊙, →, 0, 1.
    pub fn is_homomorphism(&self, other: &ResiduatedLattice, f: &[usize]) -> bool {
        if f.len() != self.size() {
            return false;
        }
        let ok_const = f[self.bottom] == other.bottom && f[self.top] == other.top;
        ok_const
            && self.elements().all(|a| {
                self.elements().all(|b| {
                    let (fa, fb) = (Element(f[a.0]), Element(f[b.0]));
                    f[self.meet(a, b).0] == other.meet(fa, fb).0
                        && f[self.join(a, b).0] == other.join(fa, fb).0
                        && f[self.fus(a, b).0] == other.fus(fa, fb).0
                        && f[self.res(a, b).0] == other.res(fa, fb).0
                })
            })
    }
}
