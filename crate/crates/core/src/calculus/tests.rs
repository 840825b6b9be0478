use super::*;
use crate::algebra::preset;
use crate::formula::{parse, Formula};
use crate::search::{validity_search, SearchBudget, Verdict};
use crate::semantics::FrameClass;
use std::sync::Arc;

fn shared(name: &str) -> Arc<crate::algebra::ResiduatedLattice> {
    Arc::new(preset(name).unwrap())
}

fn f(text: &str) -> Formula {
    parse(text, true).unwrap()
}

const COR414: &str = include_str!("../../derivations/cor414_fusion_distribution.drv");
const EX52: &str = include_str!("../../derivations/ex52_r_half_theorem.drv");
const LEMMA516_L3: &str = include_str!("../../derivations/lemma516_eta_commutation_l3.drv");
const LEMMA516_L5: &str = include_str!("../../derivations/lemma516_eta_composition_l5.drv");

#[test]
fn table4_includes_coatom_axiom() {
    let calc = preset_calculus(CalculusPreset::Table4, shared("godel(3)"), true).unwrap();
    let k_axiom = calc.axiom("Cr_0.5").expect("coatom axiom present");
    let inst = k_axiom.instantiate_with(&[f("p")], &calc.algebra);
    assert_eq!(inst, f("[](@0.5 \\/ p) -> (@0.5 \\/ []p)"));
    // and the per-element bookkeeping of box and constants
    assert!(calc.axiom("Ax_0.5").is_some());
    assert!(calc.axiom("Box1").is_some());
    assert!(calc.axiom("MD").is_some());
}

#[test]
fn table5_rules_match_example_52() {
    let calc = preset_calculus(CalculusPreset::Table5, shared("lukasiewicz(3)"), false).unwrap();
    let subst = crate::formula::Substitution {
        formulas: [
            ("phi2".to_string(), f("p")),
            ("phi3".to_string(), f("q")),
            ("phi".to_string(), f("r")),
        ]
        .into_iter()
        .collect(),
        elements: Default::default(),
    };
    let r_half = calc.rule("R_0.5").unwrap();
    assert_eq!(r_half.premises.len(), 1);
    let inst = r_half.premises[0].instantiate(&subst, &calc.algebra);
    assert_eq!(inst, f("((p + p) /\\ (q * q)) -> (r + r)"));
    let concl = r_half.conclusion.instantiate(&subst, &calc.algebra);
    assert_eq!(concl, f("(([]p + []p) /\\ ([]q * []q)) -> ([]r + []r)"));
    let r_one = calc.rule("R_1").unwrap();
    assert_eq!(r_one.premises.len(), 2);
    // first premise keeps the literal 1 of η_0
    let p1 = r_one.premises[0].instantiate(&subst, &calc.algebra);
    assert_eq!(p1, f("(1 /\\ (q + q)) -> (r + r)"));
    let p2 = r_one.premises[1].instantiate(&subst, &calc.algebra);
    assert_eq!(p2, f("((p + p) /\\ (q * q)) -> (r * r)"));
}

#[test]
fn table4_without_constants_fails() {
    let err = preset_calculus(CalculusPreset::Table4, shared("lukasiewicz(3)"), false)
        .unwrap_err();
    assert!(matches!(err, CalcError::PrerequisiteFails(_)));
}

#[test]
fn table4_needs_unique_coatom() {
    let err = preset_calculus(CalculusPreset::Table4, shared("product(boolean2,boolean2)"), true)
        .unwrap_err();
    assert!(matches!(err, CalcError::PrerequisiteFails(_)));
}

#[test]
fn table5_needs_mv_chain() {
    let err = preset_calculus(CalculusPreset::Table5, shared("godel(3)"), false).unwrap_err();
    assert!(matches!(err, CalcError::PrerequisiteFails(_)));
}

#[test]
fn cor414_derivation_checks() {
    let (calc, derivation) = parse_derivation_file(COR414).unwrap();
    check_derivation(&calc, &derivation).unwrap();
    assert_eq!(
        derivation.conclusion().unwrap(),
        &f("([]p * []q) -> [](p * q)")
    );
}

#[test]
fn ex52_derivation_checks() {
    let (calc, derivation) = parse_derivation_file(EX52).unwrap();
    check_derivation(&calc, &derivation).unwrap();
}

#[test]
fn lemma516_l3_derivation_checks() {
    let (calc, derivation) = parse_derivation_file(LEMMA516_L3).unwrap();
    check_derivation(&calc, &derivation).unwrap();
    // the derived commutation laws are the η_a commutations for Ł3
    assert_eq!(
        derivation.steps[2].formula,
        f("([]p + []p) <-> [](p + p)")
    );
    assert_eq!(
        derivation.steps[5].formula,
        f("([]p * []p) <-> [](p * p)")
    );
}

#[test]
fn lemma516_l5_composition_checks() {
    let (calc, derivation) = parse_derivation_file(LEMMA516_L5).unwrap();
    check_derivation(&calc, &derivation).unwrap();
    // conclusion is η_0.75(□p) ↔ □η_0.75(p) over Ł5
    let alg = calc.algebra.clone();
    let eta = crate::formula::characterizing_formula(&alg, alg.by_label("0.75").unwrap()).unwrap();
    let mut s = std::collections::BTreeMap::new();
    s.insert("p".to_string(), f("[]p"));
    let lhs = eta.substitute(&s);
    let mut s2 = std::collections::BTreeMap::new();
    s2.insert("p".to_string(), f("p"));
    let rhs = eta.substitute(&s2).boxed();
    assert_eq!(derivation.conclusion().unwrap(), &lhs.iff(rhs));
}

#[test]
fn mp_citing_later_line_is_invalid() {
    let text = "\
calculus: table3(lukasiewicz(3))
1: p -> p ; mp 2 3
2: p -> p ; nmtaut
3: (p -> p) -> (p -> p) ; nmtaut
";
    let (calc, derivation) = parse_derivation_file(text).unwrap();
    let err = check_derivation(&calc, &derivation).unwrap_err();
    assert!(matches!(err, CalcError::InvalidStep { step: 1, .. }));
}

#[test]
fn wrong_axiom_instance_is_invalid() {
    let text = "\
calculus: table3+K(lukasiewicz(3))
1: []p -> []p ; axiom K
";
    let (calc, derivation) = parse_derivation_file(text).unwrap();
    let err = check_derivation(&calc, &derivation).unwrap_err();
    assert!(matches!(err, CalcError::InvalidStep { step: 1, .. }));
}

#[test]
fn non_tautology_rejected_by_oracle() {
    let text = "\
calculus: table3(lukasiewicz(3))
1: p \\/ ~p ; nmtaut
";
    let (calc, derivation) = parse_derivation_file(text).unwrap();
    let err = check_derivation(&calc, &derivation).unwrap_err();
    match err {
        CalcError::InvalidStep { step: 1, reason } => {
            assert!(reason.contains("p=0.5"), "{reason}");
        }
        other => panic!("unexpected error {other:?}"),
    }
}

#[test]
fn generalized_ra_rule_accepted() {
    // Lemma 5.4's (R_a^{a1…am}) with m = 1: from the two premises for
    // b ∈ {0.5, 1} conclude η_1(□φ) from η_0.5(□φ2) only.
    let text = "\
calculus: table5(lukasiewicz(3))
1: 1 -> ((p \\/ 1) + (p \\/ 1)) ; nmtaut
2: (p + p) -> ((p \\/ 1) * (p \\/ 1)) ; nmtaut
3: ([]p + []p) -> ([](p \\/ 1) * [](p \\/ 1)) ; rule R_1 1 2
";
    let (calc, derivation) = parse_derivation_file(text).unwrap();
    check_derivation(&calc, &derivation).unwrap();
}

#[test]
fn assumptions_are_recorded() {
    let text = "\
calculus: table3(lukasiewicz(3))
1: p ; assume
2: p -> (q -> p) ; nmtaut
3: q -> p ; mp 1 2
";
    let (calc, derivation) = parse_derivation_file(text).unwrap();
    check_derivation(&calc, &derivation).unwrap();
    assert_eq!(derivation.assumptions().len(), 1);
}

#[test]
fn bookkeeping_for_l3_contains_fusion_collapse() {
    let alg = preset("lukasiewicz(3)").unwrap();
    let formulas = generate_bookkeeping(&alg);
    assert_eq!(formulas.len(), 4 * 9);
    let expected = f("(@0.5 * @0.5) <-> 0");
    assert!(formulas.contains(&expected));
    // every book-keeping formula is exactly valid in the expansion
    for formula in &formulas {
        let (holds, _) =
            crate::search::nonmodal_consequence(&alg, &[], formula, false).unwrap();
        assert!(holds, "{formula}");
    }
}

#[test]
fn witnessing_for_boolean2() {
    let alg = preset("boolean2").unwrap();
    let w = generate_witnessing(&alg);
    assert_eq!(w, f("(p <-> 0) \\/ (p <-> 1)"));
    let (holds, _) = crate::search::nonmodal_consequence(&alg, &[], &w, false).unwrap();
    assert!(holds);
}

#[test]
fn bookkeeping_count_for_godel3() {
    let alg = preset("godel(3)").unwrap();
    assert_eq!(generate_bookkeeping(&alg).len(), 36);
    let w = generate_witnessing(&alg);
    let (holds, _) = crate::search::nonmodal_consequence(&alg, &[], &w, false).unwrap();
    assert!(holds);
}

#[test]
fn soundness_probe_table3_over_l3() {
    let calc = preset_calculus(CalculusPreset::Table3, shared("lukasiewicz(3)"), true).unwrap();
    let report = soundness_probe(&calc, FrameClass::All, &[], &SearchBudget::new(2)).unwrap();
    assert!(report.all_sound(), "{:?}", report.refuted());
}

#[test]
fn soundness_probe_table4_over_godel3_crisp() {
    let calc = preset_calculus(CalculusPreset::Table4, shared("godel(3)"), true).unwrap();
    let report = soundness_probe(&calc, FrameClass::Crisp, &[], &SearchBudget::new(2)).unwrap();
    assert!(report.all_sound());
}

#[test]
fn soundness_probe_flags_bad_axiom() {
    let calc = preset_calculus(CalculusPreset::Table3, shared("lukasiewicz(3)"), true).unwrap();
    let bad = [("Bad".to_string(), f("[]0"))];
    let report = soundness_probe(&calc, FrameClass::All, &bad, &SearchBudget::new(1)).unwrap();
    assert_eq!(report.refuted().len(), 1);
    assert_eq!(report.refuted()[0].name, "Bad");
}

#[test]
fn soundness_probe_disabled_for_table2() {
    let calc = preset_calculus(CalculusPreset::Table2, shared("godel(3)"), false).unwrap();
    assert!(soundness_probe(&calc, FrameClass::All, &[], &SearchBudget::new(1)).is_err());
    // but derivation checking still works against the explicit axioms
    let text = "\
calculus: table2(godel(3))
1: [](p -> q) -> ([]p -> []q) ; axiom K
2: [](p -> q) ; assume
3: []p -> []q ; mp 2 1
";
    let (calc, derivation) = parse_derivation_file(text).unwrap();
    check_derivation(&calc, &derivation).unwrap();
}

#[test]
fn ra_rule_soundness_lemma51() {
    // random premise-satisfying instances: the conclusion is valid over
    // all frames (not only crisp ones)
    let l3 = shared("lukasiewicz(3)");
    let calc = preset_calculus(CalculusPreset::Table5, l3.clone(), false).unwrap();
    let mut rng = crate::gen::rng(71);
    let mut verified = 0;
    for _ in 0..30 {
        let phi2 = crate::gen::random_formula(&mut rng, &["p", "q"], 2, false);
        let phi3 = crate::gen::random_formula(&mut rng, &["p", "q"], 2, false);
        let phi = phi2.clone().fus(phi3.clone());
        let rule = calc.rule("R_0.5").unwrap();
        let instances: Vec<Formula> = rule
            .premises
            .iter()
            .map(|s| s.instantiate_with(&[phi2.clone(), phi3.clone(), phi.clone()], &l3))
            .collect();
        let all_hold = instances.iter().all(|inst| {
            crate::search::nonmodal_consequence(&l3, &[], inst, false)
                .unwrap()
                .0
        });
        if !all_hold {
            continue;
        }
        verified += 1;
        let conclusion = rule
            .conclusion
            .instantiate_with(&[phi2, phi3, phi], &l3);
        let verdict =
            validity_search(&l3, FrameClass::All, &conclusion, &SearchBudget::new(2)).unwrap();
        assert!(matches!(verdict, Verdict::ValidUpTo(_)), "{conclusion}");
    }
    assert!(verified > 10);
}

#[test]
fn table1_axioms_valid_on_crisp_frames() {
    let l3 = shared("lukasiewicz(3)");
    let calc = preset_calculus(CalculusPreset::Table1, l3, false).unwrap();
    let report = soundness_probe(&calc, FrameClass::Crisp, &[], &SearchBudget::new(2)).unwrap();
    assert!(report.all_sound());
}

#[test]
fn cor_a16_presets() {
    let calc = preset_calculus(CalculusPreset::CorA16, shared("godel(3)"), true).unwrap();
    assert!(calc.rule("CoatomCut").is_some());
    assert!(calc.axiom("Witness").is_some());
    // corA17 requires simplicity: godel(3) has the filter {0.5, 1}
    assert!(preset_calculus(CalculusPreset::CorA17, shared("godel(3)"), true).is_err());
    let simple = preset_calculus(CalculusPreset::CorA17, shared("lukasiewicz(4)"), true);
    assert!(simple.is_ok());
}
