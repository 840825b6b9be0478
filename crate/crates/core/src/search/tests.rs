use super::*;
use crate::algebra::preset;
use crate::formula::{parse, Formula};
use crate::gen;
use crate::semantics::FrameClass;
use std::sync::Arc;

fn shared(name: &str) -> Arc<crate::algebra::ResiduatedLattice> {
    Arc::new(preset(name).unwrap())
}

fn f(text: &str) -> Formula {
    parse(text, true).unwrap()
}

const K: &str = "[](p -> q) -> ([]p -> []q)";

#[test]
fn nonmodal_consequence_wnm5_examples() {
    let alg = preset("wnm5").unwrap();
    // ¬¬p ⊢ p holds
    let (holds, _) = nonmodal_consequence(&alg, &[f("~~p")], &f("p"), false).unwrap();
    assert!(holds);
    // ⊢ (¬¬p)^m → p fails for every m; powers stabilize within |A| steps
    for m in 1..=alg.size() {
        let phi = f("~~p").power(m).implies(f("p"));
        let (holds, witness) = nonmodal_consequence(&alg, &[], &phi, false).unwrap();
        assert!(!holds, "m = {m}");
        let env = witness.unwrap();
        assert_eq!(env["p"], alg.by_label("0.5").unwrap());
        let value = eval_nonmodal(&alg, &phi, &env).unwrap();
        assert_eq!(value, alg.by_label("0.5").unwrap());
    }
}

#[test]
fn nonmodal_identity_always_holds() {
    for name in ["boolean2", "godel(4)", "mtl6"] {
        let alg = preset(name).unwrap();
        let (holds, _) = nonmodal_consequence(&alg, &[], &f("p -> p"), false).unwrap();
        assert!(holds);
    }
}

#[test]
fn modal_input_needs_abstraction() {
    let alg = preset("lukasiewicz(3)").unwrap();
    assert!(matches!(
        nonmodal_consequence(&alg, &[], &f("[]p -> []p"), false),
        Err(NonModalError::NonModalExpected)
    ));
    let (holds, _) = nonmodal_consequence(&alg, &[], &f("[]p -> []p"), true).unwrap();
    assert!(holds);
    // distinct boxed subformulas abstract to distinct variables
    let (holds, _) = nonmodal_consequence(&alg, &[], &f("[]p -> []q"), true).unwrap();
    assert!(!holds);
}

#[test]
fn k_refuted_over_l3_with_paper_values() {
    let alg = shared("lukasiewicz(3)");
    let verdict = validity_search(&alg, FrameClass::All, &f(K), &SearchBudget::new(2)).unwrap();
    let Verdict::Refuted { model, world } = verdict else {
        panic!("expected refutation")
    };
    // first countermodel in canonical order is a single reflexive world
    // reproducing the values 1, 1, 0.5
    assert_eq!(model.eval(&f("[](p -> q)"), world).unwrap(), alg.top());
    assert_eq!(model.eval(&f("[]p"), world).unwrap(), alg.top());
    assert_eq!(
        model.eval(&f("[]q"), world).unwrap(),
        alg.by_label("0.5").unwrap()
    );
}

#[test]
fn k_valid_over_godel_chains() {
    // Gödel algebras are Heyting, so all frames are idempotent frames
    let alg = shared("godel(3)");
    let verdict = validity_search(
        &alg,
        FrameClass::All,
        &f(K),
        &SearchBudget::new(3).with_jobs(4),
    )
    .unwrap();
    assert!(matches!(verdict, Verdict::ValidUpTo(3)));
}

#[test]
fn mtl6_fusion_square_example() {
    let alg = shared("mtl6");
    let phi = f("[](p * p) <-> ([]p * []p)");
    let crisp = validity_search(&alg, FrameClass::Crisp, &phi, &SearchBudget::new(3)).unwrap();
    assert!(matches!(crisp, Verdict::ValidUpTo(3)));
    let idem =
        validity_search(&alg, FrameClass::Idempotent, &phi, &SearchBudget::new(3)).unwrap();
    let Verdict::Refuted { model, world } = idem else {
        panic!("expected refutation on idempotent frames")
    };
    assert_eq!(model.frame.n_worlds(), 1);
    assert_eq!(model.frame.r(0, 0), alg.by_label("c").unwrap());
    assert_eq!(model.value("p", 0).unwrap(), alg.by_label("a").unwrap());
    assert_eq!(
        model.eval(&f("[](p * p)"), world).unwrap(),
        alg.by_label("b").unwrap()
    );
    assert_eq!(
        model.eval(&f("[]p * []p"), world).unwrap(),
        alg.by_label("a").unwrap()
    );
}

#[test]
fn ex323_local_consequence_countermodel() {
    let alg = shared("wnm5");
    let verdict = local_consequence_refute(
        &alg,
        FrameClass::Idempotent,
        &[f("[]~~p")],
        &f("[]p"),
        &SearchBudget::new(2),
    )
    .unwrap();
    let Verdict::Refuted { model, world } = verdict else {
        panic!("expected refutation")
    };
    assert_eq!(model.frame.n_worlds(), 1);
    assert_eq!(world, 0);
    assert_eq!(model.frame.r(0, 0), alg.by_label("0.75").unwrap());
    assert_eq!(model.value("p", 0).unwrap(), alg.by_label("0.5").unwrap());
}

#[test]
fn prop321_crisp_vs_idempotent_consequence() {
    let alg = shared("godel(3)");
    let gamma = [f("[]@0.5")]; // 0.5 is the coatom of godel(3)
    let crisp = local_consequence_refute(
        &alg,
        FrameClass::Crisp,
        &gamma,
        &f("[]0"),
        &SearchBudget::new(3),
    )
    .unwrap();
    assert!(matches!(crisp, Verdict::ValidUpTo(3)));
    let idem = local_consequence_refute(
        &alg,
        FrameClass::Idempotent,
        &gamma,
        &f("[]0"),
        &SearchBudget::new(3),
    )
    .unwrap();
    let Verdict::Refuted { model, .. } = idem else {
        panic!("expected idempotent-frame refutation")
    };
    assert_eq!(model.frame.n_worlds(), 1);
    assert_eq!(model.frame.r(0, 0), alg.by_label("0.5").unwrap());
}

#[test]
fn prop327_boolean_vs_crisp_consequence() {
    let alg = shared("product(boolean2,boolean2)");
    let gamma = [f("[]0 -> @(1,0)")];
    let concl = f("~[]0");
    let boolean = local_consequence_refute(
        &alg,
        FrameClass::Boolean,
        &gamma,
        &concl,
        &SearchBudget::new(3),
    )
    .unwrap();
    let Verdict::Refuted { model, .. } = boolean else {
        panic!("expected Boolean-frame refutation")
    };
    assert_eq!(model.frame.n_worlds(), 1);
    // R(w,w) = ¬a where a = (1,0)
    assert_eq!(model.frame.r(0, 0), alg.by_label("(0,1)").unwrap());
    let crisp = local_consequence_refute(
        &alg,
        FrameClass::Crisp,
        &gamma,
        &concl,
        &SearchBudget::new(3),
    )
    .unwrap();
    assert!(matches!(crisp, Verdict::ValidUpTo(3)));
}

#[test]
fn global_consequence_closed_under_necessity_and_monotonicity() {
    // Prop 3.22 at bounded scale
    let mut rng = gen::rng(61);
    for name in ["lukasiewicz(3)", "wnm5"] {
        let alg = shared(name);
        for class in [FrameClass::All, FrameClass::Idempotent, FrameClass::Crisp] {
            for _ in 0..4 {
                let phi = gen::random_formula(&mut rng, &["p", "q"], 2, true);
                let psi = gen::random_formula(&mut rng, &["p", "q"], 2, true);
                let nec = global_consequence_refute(
                    &alg,
                    class,
                    std::slice::from_ref(&phi),
                    &phi.clone().boxed(),
                    &SearchBudget::new(2),
                )
                .unwrap();
                assert!(matches!(nec, Verdict::ValidUpTo(_)), "{name} (N)");
                let mon = global_consequence_refute(
                    &alg,
                    class,
                    &[phi.clone().implies(psi.clone())],
                    &phi.clone().boxed().implies(psi.clone().boxed()),
                    &SearchBudget::new(2),
                )
                .unwrap();
                assert!(matches!(mon, Verdict::ValidUpTo(_)), "{name} (Mon)");
            }
        }
    }
}

#[test]
fn prop314_stone_condition_agrees_with_search() {
    // IFr ⊨¹ □0 ∨ ¬□0 iff the algebra satisfies
    // x = x⊙x ⇒ ¬x ∨ ¬¬x = 1; one reflexive world suffices to refute.
    let phi = f("[]0 \\/ ~[]0");
    for name in [
        "boolean2",
        "lukasiewicz(3)",
        "lukasiewicz(4)",
        "lukasiewicz(5)",
        "godel(3)",
        "godel(4)",
        "wnm5",
        "mtl6",
        "product(boolean2,lukasiewicz(3))",
    ] {
        let alg = shared(name);
        let quasi = alg.elements().all(|x| {
            !alg.is_idempotent(x)
                || alg.join(alg.neg(x), alg.neg(alg.neg(x))) == alg.top()
        });
        let verdict =
            validity_search(&alg, FrameClass::Idempotent, &phi, &SearchBudget::new(1)).unwrap();
        assert_eq!(
            quasi,
            matches!(verdict, Verdict::ValidUpTo(_)),
            "{name}: quasiequation and bounded search disagree"
        );
    }
}

#[test]
fn definability_of_idempotent_frames() {
    // (K), (□p⊙□q)→□(p⊙q) and (□p⊙□p)→□(p⊙p) each define IFr
    for name in ["lukasiewicz(3)", "wnm5"] {
        let alg = shared(name);
        for phi_text in [K, "([]p * []q) -> [](p * q)", "([]p * []p) -> [](p * p)"] {
            let result = frame_definability_check(
                &alg,
                &[f(phi_text)],
                FrameClass::Idempotent,
                &SearchBudget::new(2),
            )
            .unwrap();
            assert!(result.is_ok(), "{name}: {phi_text}");
        }
    }
}

#[test]
fn definability_of_boolean_frames_via_coatom_axioms() {
    let alg = shared("product(boolean2,lukasiewicz(3))");
    // one axiom per coatom: □(k̄∨p) → (k̄∨□p)
    let report = crate::algebra::classify(&alg);
    let phis: Vec<Formula> = report
        .coatoms
        .iter()
        .map(|&k| {
            let c = crate::formula::element_to_formula(&alg, k);
            c.clone().or(f("p")).boxed().implies(c.or(f("p").boxed()))
        })
        .collect();
    assert_eq!(phis.len(), 2);
    let result =
        frame_definability_check(&alg, &phis, FrameClass::Boolean, &SearchBudget::new(2)).unwrap();
    assert!(result.is_ok());
}

#[test]
fn k_does_not_define_crisp_frames() {
    // over wnm5 the K axiom defines idempotent, not crisp, frames
    let alg = shared("wnm5");
    let result =
        frame_definability_check(&alg, &[f(K)], FrameClass::Crisp, &SearchBudget::new(1)).unwrap();
    let failure = result.expect_err("K cannot define crisp frames");
    assert!(failure.validates_but_outside);
}

#[test]
fn companion_discards_k_with_canonical_assignment() {
    let alg = shared("lukasiewicz(3)");
    let outcome = companion_discard(&alg, &f(K), DiscardVariant::Fr).unwrap();
    let DiscardOutcome::Discarded {
        assignment,
        model,
        world,
    } = outcome
    else {
        panic!("K must be discarded over Ł3")
    };
    let half = alg.by_label("0.5").unwrap();
    assert_eq!(assignment["$r0"], half);
    assert_eq!(assignment["p"], half);
    assert_eq!(assignment["q"], alg.bottom());
    // the emitted model is the two-world chain of the companion proof
    assert_eq!(model.frame.n_worlds(), 2);
    assert_eq!(model.frame.r(0, 1), half);
    assert_ne!(model.eval(&f(K), world).unwrap(), alg.top());
}

#[test]
fn companion_inconclusive_on_md() {
    let md = f("([]p /\\ []q) <-> [](p /\\ q)");
    for name in ["lukasiewicz(3)", "wnm5", "mtl6", "godel(3)"] {
        let alg = shared(name);
        let outcome = companion_discard(&alg, &md, DiscardVariant::Fr).unwrap();
        assert!(matches!(outcome, DiscardOutcome::Inconclusive), "{name}");
    }
}

#[test]
fn companion_gap_example_b3() {
    // □(p∨q) ↔ (□p∨□q): the companion is an MTL tautology, yet crisp
    // frames refute the formula
    let phi = f("[](p \\/ q) <-> ([]p \\/ []q)");
    let alg = shared("lukasiewicz(3)");
    let outcome = companion_discard(&alg, &phi, DiscardVariant::CFr).unwrap();
    assert!(matches!(outcome, DiscardOutcome::Inconclusive));
    let verdict = validity_search(&alg, FrameClass::Crisp, &phi, &SearchBudget::new(2)).unwrap();
    let Verdict::Refuted { model, .. } = verdict else {
        panic!("crisp frames refute the or-distribution")
    };
    assert_eq!(model.frame.n_worlds(), 2);
}

#[test]
fn discard_implies_bounded_refutation() {
    let mut rng = gen::rng(67);
    let budgets = |d: usize| SearchBudget::new(d + 1);
    for name in ["lukasiewicz(3)", "wnm5"] {
        let alg = shared(name);
        let mut discarded = 0;
        for _ in 0..40 {
            let phi = gen::random_formula(&mut rng, &["p", "q"], 3, true);
            if phi.has_diamond() {
                continue;
            }
            if let DiscardOutcome::Discarded { .. } =
                companion_discard(&alg, &phi, DiscardVariant::Fr).unwrap()
            {
                discarded += 1;
                let verdict =
                    validity_search(&alg, FrameClass::All, &phi, &budgets(phi.modal_depth()))
                        .unwrap();
                assert!(verdict.is_refuted(), "{name}: {phi}");
            }
        }
        assert!(discarded > 0, "{name}: sample should discard something");
    }
}

#[test]
fn lift_yields_md_instance() {
    let alg = shared("lukasiewicz(3)");
    let delta = f("x1 /\\ x2");
    let eps = f("p");
    let out = companion_lift(
        &alg,
        &delta,
        &["x1".into(), "x2".into()],
        &eps,
        "p",
        &[f("p"), f("q")],
        &f("p /\\ q"),
        false,
        &SearchBudget::new(2),
    )
    .unwrap();
    assert_eq!(out.conclusion, f("([]p /\\ []q) -> [](p /\\ q)"));
    assert!(matches!(out.verified, Verdict::ValidUpTo(2)));
}

#[test]
fn lift_trivial_identity() {
    let alg = shared("wnm5");
    let out = companion_lift(
        &alg,
        &f("x1"),
        &["x1".into()],
        &f("p"),
        "p",
        &[f("p")],
        &f("p"),
        false,
        &SearchBudget::new(2),
    )
    .unwrap();
    assert!(matches!(out.verified, Verdict::ValidUpTo(2)));
}

#[test]
fn lift_fusion_chain_cor_b5() {
    let alg = shared("lukasiewicz(3)");
    let delta = f("x1 * x2");
    let out = companion_lift(
        &alg,
        &delta,
        &["x1".into(), "x2".into()],
        &f("p"),
        "p",
        &[f("p"), f("p -> q")],
        &f("q \\/ (p -> q)"),
        false,
        &SearchBudget::new(2),
    );
    // the premise ((r→p)⊙(r→(p→q))) → (r→(q ∨ (p→q))) holds over Ł3
    let out = out.unwrap();
    assert!(matches!(out.verified, Verdict::ValidUpTo(2)));
}

#[test]
fn lift_rejects_non_monotone_delta() {
    let alg = shared("lukasiewicz(3)");
    let err = companion_lift(
        &alg,
        &f("~x1"),
        &["x1".into()],
        &f("p"),
        "p",
        &[f("p")],
        &f("p"),
        false,
        &SearchBudget::new(1),
    )
    .unwrap_err();
    assert!(matches!(err, LiftError::PropertyFails(_)));
}

#[test]
fn lift_reports_premise_failure() {
    let alg = shared("lukasiewicz(3)");
    let err = companion_lift(
        &alg,
        &f("x1"),
        &["x1".into()],
        &f("p"),
        "p",
        &[f("p")],
        &f("q"),
        false,
        &SearchBudget::new(1),
    )
    .unwrap_err();
    assert!(matches!(err, LiftError::PremiseFails(_)));
}

#[test]
fn enumeration_deterministic_across_jobs() {
    let alg = shared("lukasiewicz(3)");
    let phi = f(K);
    let render = |v: &Verdict| match v {
        Verdict::ValidUpTo(n) => format!("valid {n}"),
        Verdict::Refuted { model, world } => format!(
            "refuted at {world}:\n{}",
            crate::semantics::render_model_file(model)
        ),
    };
    let v1 = validity_search(&alg, FrameClass::All, &phi, &SearchBudget::new(2)).unwrap();
    let v4 = validity_search(
        &alg,
        FrameClass::All,
        &phi,
        &SearchBudget::new(2).with_jobs(4),
    )
    .unwrap();
    assert_eq!(render(&v1), render(&v4));
    // a second formula with a later countermodel
    let phi2 = f("([]p + []p) <-> [](p + p)");
    let w1 = validity_search(&alg, FrameClass::All, &phi2, &SearchBudget::new(2)).unwrap();
    let w4 = validity_search(
        &alg,
        FrameClass::All,
        &phi2,
        &SearchBudget::new(2).with_jobs(4),
    )
    .unwrap();
    assert_eq!(render(&w1), render(&w4));
}

#[test]
fn budget_cap_withholds_verdict() {
    let alg = shared("lukasiewicz(3)");
    let err = validity_search(
        &alg,
        FrameClass::All,
        &f("[]p -> []p"),
        &SearchBudget::new(3).with_model_cap(10),
    )
    .unwrap_err();
    assert!(matches!(err, SearchError::BudgetExceeded(10)));
}

#[test]
fn matrix_example_52_first_matrix_fails_only_r_half() {
    let (matrix, calc) = example_52_matrix(false);
    let items = matrix_soundness(&matrix, &calc);
    let failing: Vec<&str> = items
        .iter()
        .filter(|i| !i.pass)
        .map(|i| i.name.as_str())
        .collect();
    assert_eq!(failing, ["R_0.5"]);
    let witness = items
        .iter()
        .find(|i| i.name == "R_0.5")
        .unwrap()
        .witness
        .clone()
        .unwrap();
    assert!(
        witness.iter().any(|(_, v)| v == "(0.5,0)"),
        "witness should evaluate at (0.5,0): {witness:?}"
    );
}

#[test]
fn matrix_example_52_second_matrix_fails_only_r_one() {
    let (matrix, calc) = example_52_matrix(true);
    let items = matrix_soundness(&matrix, &calc);
    let failing: Vec<&str> = items
        .iter()
        .filter(|i| !i.pass)
        .map(|i| i.name.as_str())
        .collect();
    assert_eq!(failing, ["R_1"]);
    let witness = items
        .iter()
        .find(|i| i.name == "R_1")
        .unwrap()
        .witness
        .clone()
        .unwrap();
    assert!(
        witness.iter().any(|(_, v)| v == "(0.5,0)"),
        "witness should evaluate at (0.5,0): {witness:?}"
    );
}

#[test]
fn constant_box_matrix_models_necessity() {
    // □x := 1 validates the Necessity rule
    let alg = shared("lukasiewicz(3)");
    let calc = crate::calculus::preset_calculus(
        crate::calculus::CalculusPreset::Table1,
        alg.clone(),
        false,
    )
    .unwrap();
    let matrix = ModalMatrix::new(
        alg.clone(),
        vec![alg.top(); alg.size()],
        vec![alg.top()],
    );
    let items = matrix_soundness(&matrix, &calc);
    let nec = items.iter().find(|i| i.name == "N").unwrap();
    assert!(nec.pass);
}

/// The two independence matrices over Ł3 × Ł2 with the Table 5 calculus
/// for Ł3 (rule names and η templates are shared with the chain, the
/// matrix algebra is the product).
pub(crate) fn example_52_matrix(second: bool) -> (ModalMatrix, crate::calculus::Calculus) {
    let l3 = shared("lukasiewicz(3)");
    let calc = crate::calculus::preset_calculus(
        crate::calculus::CalculusPreset::Table5,
        l3.clone(),
        false,
    )
    .unwrap();
    let prod = shared("product(lukasiewicz(3),lukasiewicz(2))");
    let pi1 = |x: crate::algebra::Element| prod.label(x).split(',').next().unwrap()[1..].to_string();
    let box_table: Vec<crate::algebra::Element> = prod
        .elements()
        .map(|x| {
            let first = pi1(x);
            if second {
                if first == "1" {
                    prod.by_label("(1,1)").unwrap()
                } else {
                    prod.by_label("(0.5,1)").unwrap()
                }
            } else if first == "0" {
                prod.by_label("(0,0)").unwrap()
            } else {
                prod.by_label("(1,1)").unwrap()
            }
        })
        .collect();
    // the calculus keeps Ł3 as its base; only the matrix lives over the
    // product algebra
    let designated = vec![prod.top()];
    (ModalMatrix::new(prod, box_table, designated), calc)
}
