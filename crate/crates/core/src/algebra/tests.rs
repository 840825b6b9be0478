use super::*;
use crate::formula::parse;

fn l3() -> ResiduatedLattice {
    preset("lukasiewicz(3)").unwrap()
}

fn chain_leq(n: usize) -> Vec<Vec<bool>> {
    (0..n).map(|i| (0..n).map(|j| i <= j).collect()).collect()
}

#[test]
fn l3_explicit_tables_build() {
    let labels: Vec<String> = ["0", "0.5", "1"].iter().map(|s| s.to_string()).collect();
    let fus = vec![
        vec!["0".to_string(), "0".to_string(), "0".to_string()],
        vec!["0".to_string(), "0".to_string(), "0.5".to_string()],
        vec!["0".to_string(), "0.5".to_string(), "1".to_string()],
    ];
    let alg = build_lattice("l3", labels, chain_leq(3), fus).unwrap();
    let half = alg.by_label("0.5").unwrap();
    assert_eq!(alg.fus(half, half), alg.bottom());
    assert_eq!(alg.res(half, alg.bottom()), half);
}

#[test]
fn non_commutative_fusion_rejected() {
    // ⊙ := first argument is not commutative
    let labels: Vec<String> = ["0", "1"].iter().map(|s| s.to_string()).collect();
    let fus = vec![
        vec!["0".to_string(), "0".to_string()],
        vec!["1".to_string(), "1".to_string()],
    ];
    let err = build_lattice("bad", labels, chain_leq(2), fus).unwrap_err();
    assert!(matches!(err, AlgebraError::NotAMonoid(_)));
}

/// 5-element Heyting poset 0 < a,b < c < 1 with a, b incomparable and
/// fusion = meet.
fn heyting5() -> ResiduatedLattice {
    let labels: Vec<String> = ["0", "a", "b", "c", "1"].iter().map(|s| s.to_string()).collect();
    // order: 0 below all; a,b below c,1; c below 1
    let pairs: &[(usize, usize)] = &[
        (0, 0),
        (0, 1),
        (0, 2),
        (0, 3),
        (0, 4),
        (1, 1),
        (1, 3),
        (1, 4),
        (2, 2),
        (2, 3),
        (2, 4),
        (3, 3),
        (3, 4),
        (4, 4),
    ];
    let mut leq = vec![vec![false; 5]; 5];
    for &(i, j) in pairs {
        leq[i][j] = true;
    }
    // fusion = meet, computed from the order by hand
    let meet = |i: usize, j: usize| -> usize {
        if leq[i][j] {
            i
        } else if leq[j][i] {
            j
        } else {
            // only incomparable pair is {a, b} (and each with nothing else)
            0
        }
    };
    let fus: Vec<Vec<String>> = (0..5)
        .map(|i| (0..5).map(|j| labels[meet(i, j)].clone()).collect())
        .collect();
    build_lattice("heyting5", labels, leq, fus).unwrap()
}

#[test]
fn heyting5_residuum_derived_by_brute_force() {
    let alg = heyting5();
    // independent oracle: a→b := join{z : z∧a ≤ b}
    for a in alg.elements() {
        for b in alg.elements() {
            let oracle = alg.join_all(
                alg.elements()
                    .filter(|&z| alg.leq(alg.meet(z, a), b)),
            );
            assert_eq!(alg.res(a, b), oracle);
        }
    }
    let a = alg.by_label("a").unwrap();
    let b = alg.by_label("b").unwrap();
    assert_eq!(alg.res(a, b), b);
    assert_eq!(alg.res(b, a), a);
}

#[test]
fn mtl6_tables_match() {
    let alg = preset("mtl6").unwrap();
    let e = |l: &str| alg.by_label(l).unwrap();
    assert_eq!(alg.res(e("c"), e("a")), e("b"));
    assert_eq!(alg.fus(e("b"), e("b")), e("a"));
    assert_eq!(alg.fus(e("c"), e("c")), e("c"));
    // full residuum table from the figure
    let expected = [
        ["1", "1", "1", "1", "1", "1"],
        ["0", "1", "1", "1", "1", "1"],
        ["0", "c", "1", "1", "1", "1"],
        ["0", "b", "b", "1", "1", "1"],
        ["0", "a", "b", "c", "1", "1"],
        ["0", "a", "b", "c", "d", "1"],
    ];
    for (i, row) in expected.iter().enumerate() {
        for (j, lbl) in row.iter().enumerate() {
            assert_eq!(alg.res(Element(i), Element(j)), e(lbl), "res({i},{j})");
        }
    }
}

#[test]
fn wnm5_negations() {
    let alg = preset("wnm5").unwrap();
    let e = |l: &str| alg.by_label(l).unwrap();
    assert_eq!(alg.fus(e("0.75"), e("0.75")), e("0.75"));
    assert_eq!(alg.neg(e("0.5")), e("0.25"));
    assert_eq!(alg.neg(alg.neg(e("0.5"))), e("0.75"));
}

#[test]
fn lukasiewicz2_is_boolean2() {
    let a = preset("lukasiewicz(2)").unwrap();
    let b = preset("boolean2").unwrap();
    assert!(same_tables(&a, &b));
}

#[test]
fn bad_param_rejected() {
    assert!(matches!(
        preset("lukasiewicz(1)"),
        Err(AlgebraError::BadParam(_))
    ));
}

#[test]
fn classify_l3() {
    let alg = l3();
    let r = classify(&alg);
    let labels = |els: &[Element]| -> Vec<String> {
        els.iter().map(|&e| alg.label(e).to_string()).collect()
    };
    assert_eq!(labels(&r.idempotents), ["0", "1"]);
    assert_eq!(labels(&r.booleans), ["0", "1"]);
    assert_eq!(labels(&r.coatoms), ["0.5"]);
    assert!(r.is_mv);
    assert!(!r.is_heyting);
    assert!(r.is_simple);
}

#[test]
fn classify_wnm5() {
    let alg = preset("wnm5").unwrap();
    let r = classify(&alg);
    let idem = alg.by_label("0.75").unwrap();
    assert!(r.idempotents.contains(&idem));
    assert!(!r.is_involutive);
}

#[test]
fn chains_have_all_elements_distributive() {
    for name in ["lukasiewicz(4)", "godel(5)", "mtl6", "wnm5"] {
        let alg = preset(name).unwrap();
        let r = classify(&alg);
        assert_eq!(r.distributives.len(), alg.size(), "{name}");
    }
}

#[test]
fn laws_pass_on_l3() {
    let checks = check_laws(&l3());
    assert!(checks.iter().all(|c| c.pass));
}

#[test]
fn law_26_fails_on_heyting5() {
    let alg = heyting5();
    let checks = check_laws(&alg);
    let c26 = checks.iter().find(|c| c.law == "2.6").unwrap();
    assert!(!c26.pass);
    // (a∧b)→0 = 1 while (a→0)∨(b→0) = c
    let e = |l: &str| alg.by_label(l).unwrap();
    let lhs = alg.res(alg.meet(e("a"), e("b")), alg.bottom());
    let rhs = alg.join(alg.res(e("a"), alg.bottom()), alg.res(e("b"), alg.bottom()));
    assert_eq!(lhs, alg.top());
    assert_eq!(rhs, e("c"));
}

#[test]
fn law_22_forced_by_adjunction() {
    for name in ["lukasiewicz(5)", "godel(4)", "wnm5", "mtl6", "boolean2"] {
        let alg = preset(name).unwrap();
        assert!(check_laws(&alg).iter().find(|c| c.law == "2.2").unwrap().pass);
    }
}

#[test]
fn mtl_flag_agrees_with_laws_and_prelinearity() {
    for name in [
        "lukasiewicz(3)",
        "godel(3)",
        "wnm5",
        "mtl6",
        "product(boolean2,lukasiewicz(3))",
    ] {
        let alg = preset(name).unwrap();
        let report = classify(&alg);
        let checks = check_laws(&alg);
        let laws_mtl = checks.iter().find(|c| c.law == "2.5").unwrap().pass
            && checks.iter().find(|c| c.law == "2.6").unwrap().pass;
        let prelinear = alg.elements().all(|a| {
            alg.elements()
                .all(|b| alg.join(alg.res(a, b), alg.res(b, a)) == alg.top())
        });
        assert_eq!(report.is_mtl, laws_mtl, "{name}");
        assert_eq!(report.is_mtl, prelinear, "{name}");
    }
    // the Heyting poset is not prelinear
    let alg = heyting5();
    let report = classify(&alg);
    assert!(!report.is_mtl);
    let checks = check_laws(&alg);
    assert!(!checks.iter().find(|c| c.law == "2.6").unwrap().pass);
}

#[test]
fn joins_of_idempotents_are_idempotent() {
    for name in ["wnm5", "mtl6", "godel(4)", "product(boolean2,lukasiewicz(3))"] {
        let alg = preset(name).unwrap();
        for a in alg.elements().filter(|&a| alg.is_idempotent(a)) {
            for b in alg.elements().filter(|&b| alg.is_idempotent(b)) {
                assert!(alg.is_idempotent(alg.join(a, b)), "{name}");
            }
        }
    }
}

#[test]
fn godel3_quotient_by_coatom_filter_is_boolean2() {
    let alg = preset("godel(3)").unwrap();
    let k = alg.unique_coatom().unwrap();
    let f = filter_generated(&alg, &[k]);
    assert_eq!(f.members.len(), 2);
    let (q, proj) = quotient(&alg, &f).unwrap();
    assert_eq!(q.size(), 2);
    assert!(find_isomorphism(&q, &preset("boolean2").unwrap()).is_some());
    // projection maps the generator to the top
    assert_eq!(proj[k.0], q.top().0);
}

#[test]
fn trivial_filter_gives_isomorphic_quotient() {
    for name in ["lukasiewicz(4)", "wnm5", "mtl6"] {
        let alg = preset(name).unwrap();
        let f = Filter {
            members: vec![alg.top()],
        };
        let (q, _) = quotient(&alg, &f).unwrap();
        assert!(find_isomorphism(&q, &alg).is_some(), "{name}");
    }
}

#[test]
fn l3_half_generates_improper_filter() {
    let alg = l3();
    let half = alg.by_label("0.5").unwrap();
    let f = filter_generated(&alg, &[half]);
    assert_eq!(f.members.len(), alg.size());
    let (q, _) = quotient(&alg, &f).unwrap();
    assert_eq!(q.size(), 1);
}

#[test]
fn filter_generator_maps_to_top_in_quotient() {
    for name in ["godel(4)", "wnm5", "mtl6"] {
        let alg = preset(name).unwrap();
        for a in alg.elements() {
            let f = filter_generated(&alg, &[a]);
            let (q, proj) = quotient(&alg, &f).unwrap();
            assert_eq!(proj[a.0], q.top().0, "{name}, {}", alg.label(a));
        }
    }
}

#[test]
fn boolean_decomposition_of_product() {
    let alg = preset("product(boolean2,lukasiewicz(3))").unwrap();
    let d = boolean_decomposition(&alg).unwrap();
    assert_eq!(d.factors.len(), 2);
    assert!(find_isomorphism(&d.factors[0], &preset("boolean2").unwrap()).is_some());
    assert!(find_isomorphism(&d.factors[1], &l3()).is_some());
    for f in &d.factors {
        let r = classify(f);
        assert_eq!(r.booleans.len(), 2);
    }
}

#[test]
fn indecomposables_stay_whole() {
    for name in ["lukasiewicz(3)", "godel(3)"] {
        let alg = preset(name).unwrap();
        let d = boolean_decomposition(&alg).unwrap();
        assert_eq!(d.factors.len(), 1, "{name}");
        assert!(find_isomorphism(&d.factors[0], &alg).is_some());
    }
}

#[test]
fn term_table_for_oplus_doubling() {
    let alg = l3();
    let t = parse("p + p", false).unwrap();
    let (vars, table) = term_function(&alg, &t);
    assert_eq!(vars, ["p"]);
    let labels: Vec<&str> = table.iter().map(|&e| alg.label(e)).collect();
    assert_eq!(labels, ["0", "1", "1"]);
    let props = term_properties(&alg, &t);
    assert!(props.nondecreasing.iter().all(|&b| b));
    assert!(props.expanding);
}

#[test]
fn identity_is_expanding_and_negation_is_not_monotone() {
    let alg = l3();
    let id = parse("p", false).unwrap();
    assert!(term_properties(&alg, &id).expanding);
    let neg = parse("~p", false).unwrap();
    let props = term_properties(&alg, &neg);
    assert!(!props.nondecreasing[0]);
}

#[test]
fn ordinal_sum_separator_is_idempotent() {
    let a = preset("lukasiewicz(2)").unwrap();
    let b = preset("lukasiewicz(3)").unwrap();
    let sum = ordinal_sum(&a, &b).unwrap();
    assert_eq!(sum.size(), 4);
    let sep = sum.by_label("1").unwrap();
    assert!(sum.is_idempotent(sep));
    // below the separator fusion is as in the first component, above as
    // in the second (0.5 ⊙ 0.5 = 0 there, which is the separator), across
    // it is the minimum
    let zero = sum.bottom();
    // B's labels keep their names unless they collide ("1" becomes "1'")
    assert_eq!(sum.labels(), ["0", "1", "0.5", "1'"]);
    let above = sum.by_label("0.5").unwrap();
    assert_eq!(sum.fus(zero, above), zero);
    assert_eq!(sum.fus(above, above), sep);
    assert_eq!(sum.fus(sep, above), sep);
}

#[test]
fn algebra_file_round_trip() {
    for name in ["mtl6", "wnm5", "lukasiewicz(4)"] {
        let alg = preset(name).unwrap();
        let text = render_algebra_file(&alg);
        let back = parse_algebra_file(&text).unwrap();
        assert!(same_tables(&alg, &back), "{name}");
    }
}

#[test]
fn adjunction_holds_on_every_preset() {
    for name in [
        "lukasiewicz(2)",
        "lukasiewicz(3)",
        "lukasiewicz(4)",
        "lukasiewicz(5)",
        "godel(3)",
        "godel(4)",
        "boolean2",
        "wnm5",
        "mtl6",
        "product(boolean2,lukasiewicz(3))",
        "product(boolean2,boolean2)",
        "ordinal_sum(lukasiewicz(2),lukasiewicz(3))",
    ] {
        let alg = preset(name).unwrap();
        for a in alg.elements() {
            for b in alg.elements() {
                for c in alg.elements() {
                    assert_eq!(
                        alg.leq(alg.fus(a, b), c),
                        alg.leq(b, alg.res(a, c)),
                        "{name}: adjunction at {} {} {}",
                        alg.label(a),
                        alg.label(b),
                        alg.label(c)
                    );
                }
            }
        }
    }
}
