//! Exhaustive exact classification of a finite residuated lattice.

use super::filters::filter_generated;
use super::{Element, ResiduatedLattice};

/// Element sets and subvariety flags, each computed by running the
/// defining (quasi)equation over all tuples.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebraReport {
    pub idempotents: Vec<Element>,
    pub booleans: Vec<Element>,
    pub coatoms: Vec<Element>,
    pub distributives: Vec<Element>,
    pub is_chain: bool,
    pub top_join_irreducible: bool,
    pub is_heyting: bool,
    pub is_mtl: bool,
    pub is_bl: bool,
    pub is_mv: bool,
    pub is_involutive: bool,
    pub is_simple: bool,
}

pub fn classify(alg: &ResiduatedLattice) -> AlgebraReport {
    let idempotents: Vec<Element> = alg.elements().filter(|&a| alg.is_idempotent(a)).collect();
    let booleans: Vec<Element> = alg.elements().filter(|&a| alg.is_boolean(a)).collect();
    let coatoms: Vec<Element> = alg.elements().filter(|&a| alg.is_coatom(a)).collect();
    let distributives: Vec<Element> = alg
        .elements()
        .filter(|&a| alg.is_distributive_element(a))
        .collect();
    let is_chain = alg
        .elements()
        .all(|a| alg.elements().all(|b| alg.leq(a, b) || alg.leq(b, a)));
    let top_join_irreducible = alg.elements().all(|a| {
        alg.elements().all(|b| {
            alg.join(a, b) != alg.top() || a == alg.top() || b == alg.top()
        })
    });
    let is_heyting = alg.elements().all(|a| alg.is_idempotent(a));
    let is_mtl = alg.elements().all(|a| {
        alg.elements()
            .all(|b| alg.join(alg.res(a, b), alg.res(b, a)) == alg.top())
    });
    let divisible = alg
        .elements()
        .all(|a| alg.elements().all(|b| alg.fus(a, alg.res(a, b)) == alg.meet(a, b)));
    let is_involutive = alg.elements().all(|a| alg.neg(alg.neg(a)) == a);
    let is_bl = is_mtl && divisible;
    let is_mv = is_bl && is_involutive;
    // Simple: no congruence filter besides {1} and A itself. Every
    // element other than 1 must generate the improper filter.
    let is_simple = alg
        .elements()
        .filter(|&a| a != alg.top())
        .all(|a| filter_generated(alg, &[a]).members.len() == alg.size());
    AlgebraReport {
        idempotents,
        booleans,
        coatoms,
        distributives,
        is_chain,
        top_join_irreducible,
        is_heyting,
        is_mtl,
        is_bl,
        is_mv,
        is_involutive,
        is_simple,
    }
}

impl AlgebraReport {
    pub fn summary(&self, alg: &ResiduatedLattice) -> String {
        let set = |els: &[Element]| {
            let labels: Vec<&str> = els.iter().map(|&e| alg.label(e)).collect();
            format!("{{{}}}", labels.join(", "))
        };
        let mut flags = Vec::new();
        for (name, v) in [
            ("chain", self.is_chain),
            ("top-join-irreducible", self.top_join_irreducible),
            ("Heyting", self.is_heyting),
            ("MTL", self.is_mtl),
            ("BL", self.is_bl),
            ("MV", self.is_mv),
            ("involutive", self.is_involutive),
            ("simple", self.is_simple),
        ] {
            if v {
                flags.push(name);
            }
        }
        format!(
            "idempotents: {}\nbooleans:    {}\ncoatoms:     {}\ndistributive:{}\nflags:       {}",
            set(&self.idempotents),
            set(&self.booleans),
            set(&self.coatoms),
            set(&self.distributives),
            if flags.is_empty() { "(none)".into() } else { flags.join(", ") }
        )
    }
}
