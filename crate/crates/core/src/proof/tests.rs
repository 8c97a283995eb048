use super::*;
use crate::syntax::parse;

fn f(text: &str) -> Formula {
    parse(text).unwrap()
}

fn fs(texts: &[&str]) -> Vec<Formula> {
    texts.iter().map(|t| f(t)).collect()
}

#[test]
fn goldens_are_accepted() {
    assert_eq!(check(&samples::excluded_middle_from_p(), SystemId::SysI), Ok(()));
    assert_eq!(check(&samples::excluded_middle_from_p(), SystemId::SysII), Ok(()));
    assert_eq!(check(&samples::explosion(), SystemId::SysI), Ok(()));
    assert_eq!(check(&samples::box_conjunction(), SystemId::SysI), Ok(()));
    assert_eq!(check(&samples::or_commutes(), SystemId::SysIIS4), Ok(()));
    assert_eq!(check(&samples::understanding_persists(), SystemId::SysII), Ok(()));
    assert_eq!(
        samples::excluded_middle_from_p().conclusion,
        Sequent::new(fs(&["p"]), f("p | ~p"))
    );
}

#[test]
fn rules_outside_the_system_are_rejected() {
    let errors = check(&samples::box_conjunction(), SystemId::SysII).unwrap_err();
    assert_eq!(errors.len(), 1);
    assert_eq!(errors[0].address, NodeAddress(vec![]));
    assert!(errors[0].message.contains("not part of system II"));

    // S4 replaces the plain box introduction.
    assert!(check(&samples::box_conjunction(), SystemId::SysIS4).is_err());
    assert!(check(&samples::understanding_persists(), SystemId::SysI).is_err());
    assert!(check(&samples::understanding_persists(), SystemId::SysIIS4).is_ok());
}

#[test]
fn shape_mismatch_is_reported_at_the_node() {
    let d = Derivation::new(
        RuleId::AndE1,
        vec![Derivation::assume(fs(&["p | q"]), f("p | q"))],
        Sequent::new(fs(&["p | q"]), f("p")),
    );
    let errors = check(&d, SystemId::SysI).unwrap_err();
    assert_eq!(errors.len(), 1);
    assert_eq!(errors[0].rule, RuleId::AndE1);
    assert_eq!(errors[0].address.to_string(), "root");
    assert!(errors[0].message.contains("A & B"), "{}", errors[0].message);
}

#[test]
fn errors_deep_in_the_tree_carry_their_address() {
    let mut d = samples::excluded_middle_from_p();
    // root(OrI2) <- 0(AndI) <- 0.1(NotNotI) <- 0.1.0(Assume)
    d.node_mut(&[0, 1, 0]).unwrap().conclusion = Sequent::new(fs(&["q"]), f("p"));
    let errors = check(&d, SystemId::SysI).unwrap_err();
    let addresses: Vec<String> = errors.iter().map(|e| e.address.to_string()).collect();
    assert!(addresses.contains(&"root.0.1.0".to_string()), "{addresses:?}");
    assert!(addresses.contains(&"root.0.1".to_string()), "{addresses:?}");
}

#[test]
fn wrong_premise_count() {
    let d = Derivation::new(RuleId::AndI, vec![Derivation::assume(fs(&["p"]), f("p"))], Sequent::new(fs(&["p"]), f("p & p")));
    let errors = check(&d, SystemId::SysI).unwrap_err();
    assert!(errors[0].message.contains("expected 2 premise(s), found 1"));

    let leaf = Derivation::new(RuleId::NotNotI, vec![], Sequent::new(fs(&["p"]), f("~~p")));
    assert!(check(&leaf, SystemId::SysI).is_err());
}

#[test]
fn assume_needs_membership() {
    assert!(check(&Derivation::assume(fs(&["p", "q"]), f("q")), SystemId::SysI).is_ok());
    assert!(check(&Derivation::assume(fs(&["p"]), f("q")), SystemId::SysI).is_err());
    assert!(check(&Derivation::assume([], f("q")), SystemId::SysI).is_err());
}

#[test]
fn weakening_only_adds() {
    let base = Derivation::assume(fs(&["p"]), f("p"));
    let ok = Derivation::new(RuleId::Weaken, vec![base.clone()], Sequent::new(fs(&["p", "q"]), f("p")));
    assert!(check(&ok, SystemId::SysI).is_ok());
    let bad = Derivation::new(RuleId::Weaken, vec![base], Sequent::new(fs(&["q"]), f("p")));
    assert!(check(&bad, SystemId::SysI).is_err());
}

#[test]
fn or_elim_discharges_exactly_the_three_cases() {
    let d = samples::or_commutes();
    assert!(!d.conclusion.assumptions.contains(&f("p & q")));
    assert!(!d.conclusion.assumptions.contains(&f("p & ~q")));
    assert!(!d.conclusion.assumptions.contains(&f("~p & q")));

    // Keeping a discharged formula in the conclusion is an error.
    let mut kept = d.clone();
    kept.conclusion.assumptions.insert(f("p & q"));
    assert!(check(&kept, SystemId::SysI).is_err());

    // A discharged formula that also sits in the major premise context stays.
    let mut major = d.clone();
    major.premises[0] = Derivation::new(
        RuleId::Weaken,
        vec![major.premises[0].clone()],
        Sequent::new(fs(&["p | q", "p & q"]), f("p | q")),
    );
    major.conclusion.assumptions.insert(f("p & q"));
    assert_eq!(check(&major, SystemId::SysI), Ok(()));

    // Residual assumptions from a minor premise survive discharge elsewhere.
    let mut residual = d;
    let case1 = residual.premises[1].clone();
    residual.premises[1] = Derivation::new(
        RuleId::Weaken,
        vec![case1],
        Sequent::new(fs(&["p & q", "p & ~q"]), f("q | p")),
    );
    assert!(check(&residual, SystemId::SysI).is_err());
    residual.conclusion.assumptions.insert(f("p & ~q"));
    assert_eq!(check(&residual, SystemId::SysI), Ok(()));
}

#[test]
fn box_rules() {
    let base = Derivation::assume(fs(&["p"]), f("p"));
    let bi = Derivation::new(RuleId::BoxIDeontic, vec![base.clone()], Sequent::new(fs(&["[]p"]), f("[]p")));
    assert!(check(&bi, SystemId::SysI).is_ok());

    let bi1 = Derivation::new(
        RuleId::BoxI1Epistemic,
        vec![base.clone()],
        Sequent::new(fs(&["[]p", "p | ~p"]), f("[]p")),
    );
    assert!(check(&bi1, SystemId::SysII).is_ok());
    let missing_em = Derivation::new(RuleId::BoxI1Epistemic, vec![base.clone()], Sequent::new(fs(&["[]p"]), f("[]p")));
    assert!(check(&missing_em, SystemId::SysII).is_err());

    let boxed = Derivation::assume(fs(&["[]p"]), f("[]p"));
    let prime = Derivation::new(RuleId::BoxIPrimeS4, vec![boxed.clone()], Sequent::new(fs(&["[]p"]), f("[][]p")));
    assert!(check(&prime, SystemId::SysIS4).is_ok());
    let not_boxed = Derivation::new(RuleId::BoxIPrimeS4, vec![base], Sequent::new(fs(&["p"]), f("[]p")));
    let errors = check(&not_boxed, SystemId::SysIS4).unwrap_err();
    assert!(errors[0].message.contains("not of the form []B"));

    let e = Derivation::new(RuleId::BoxES4, vec![boxed], Sequent::new(fs(&["[]p"]), f("p")));
    assert!(check(&e, SystemId::SysIS4).is_ok());
    assert!(check(&e, SystemId::SysIIS4).is_ok());
    assert!(check(&e, SystemId::SysI).is_err());
}

#[test]
fn negated_box_rules_differ_between_systems() {
    let prem = Derivation::assume(fs(&["[](p | ~p)"]), f("[](p | ~p)"));
    let d = Derivation::new(RuleId::NegBoxIDeontic, vec![prem], Sequent::new(fs(&["[](p | ~p)"]), f("[]p | ~[]p")));
    assert!(check(&d, SystemId::SysI).is_ok());

    let prem = Derivation::assume(fs(&["p | ~p"]), f("p | ~p"));
    let d = Derivation::new(RuleId::NegBoxIEpistemic, vec![prem], Sequent::new(fs(&["p | ~p"]), f("[]p | ~[]p")));
    assert!(check(&d, SystemId::SysII).is_ok());

    let prem = Derivation::assume(fs(&["[]p | ~[]p"]), f("[]p | ~[]p"));
    let back_i = Derivation::new(RuleId::NegBoxEDeontic, vec![prem.clone()], Sequent::new(fs(&["[]p | ~[]p"]), f("[](p | ~p)")));
    let back_ii = Derivation::new(RuleId::NegBoxEEpistemic, vec![prem], Sequent::new(fs(&["[]p | ~[]p"]), f("p | ~p")));
    assert!(check(&back_i, SystemId::SysI).is_ok());
    assert!(check(&back_ii, SystemId::SysII).is_ok());
}

#[test]
fn box_image_examples() {
    assert!(box_image(&BTreeSet::new()).is_empty());
    assert_eq!(box_image(&fs(&["p"])), fs(&["[]p"]).into_iter().collect());
    assert_eq!(box_image(&fs(&["p", "q | r"])), fs(&["[]p", "[](q | r)"]).into_iter().collect());
}

#[test]
fn rule_instance_examples() {
    let pool = fs(&["p", "q"]);
    let or3: Vec<_> = rule_instances(RuleId::OrI3, &pool, 0).collect();
    assert!(or3.iter().any(|i| i.premises[0].conclusion == f("p & q") && i.conclusion.conclusion == f("p | q")));
    assert_eq!(or3.len(), 4);

    let efq: Vec<_> = rule_instances(RuleId::Efq, &fs(&["p"]), 1).collect();
    assert!(efq.iter().any(|i| i.premises[0] == Sequent::new(fs(&["p"]), f("p"))
        && i.premises[1] == Sequent::new(fs(&["p"]), f("~p"))
        && i.conclusion.conclusion == f("p")));

    let bi: Vec<_> = rule_instances(RuleId::BoxIDeontic, &fs(&["p"]), 1).collect();
    assert!(bi.iter().any(|i| i.premises[0] == Sequent::new(fs(&["p"]), f("p"))
        && i.conclusion == Sequent::new(fs(&["[]p"]), f("[]p"))));
}

#[test]
fn every_rule_instance_passes_the_checker() {
    let pool = fs(&["p", "~q", "[]p"]);
    for rule in RuleId::ALL {
        let mut count = 0;
        for inst in rule_instances(rule, &pool, 1) {
            let premises: Vec<&Sequent> = inst.premises.iter().collect();
            assert_eq!(check_step(rule, &premises, &inst.conclusion), Ok(()), "{rule}: {}", inst.conclusion);
            count += 1;
        }
        assert!(count > 0, "{rule} has no instances");
    }
}

#[test]
fn subsets() {
    let pool = fs(&["p", "q", "r"]);
    assert_eq!(subsets_up_to(&pool, 0).len(), 1);
    assert_eq!(subsets_up_to(&pool, 1).len(), 4);
    assert_eq!(subsets_up_to(&pool, 2).len(), 7);
    assert_eq!(subsets_up_to(&pool, 5).len(), 8);
}

#[test]
fn rule_names_round_trip() {
    for rule in RuleId::ALL {
        assert_eq!(rule.name().parse::<RuleId>(), Ok(rule));
    }
    for sys in SystemId::ALL {
        assert_eq!(sys.name().parse::<SystemId>(), Ok(sys));
        assert!(sys.allows(RuleId::Weaken));
    }
}

#[test]
fn proof_files_round_trip() {
    for d in [samples::excluded_middle_from_p(), samples::or_commutes(), samples::box_conjunction()] {
        let text = save_derivation(&d);
        assert_eq!(load_derivation(&text).unwrap(), d);
    }
}

#[test]
fn proof_file_errors() {
    let err = load_derivation(r#"{"rule": "Nope", "conclusion": {"assumptions": [], "formula": "p"}}"#).unwrap_err();
    assert!(matches!(err, ProofFileError::UnknownRule { .. }));
    let err = load_derivation(
        r#"{"rule": "NotNotI", "conclusion": {"assumptions": ["p"], "formula": "~~p"},
            "premises": [{"rule": "Assume", "conclusion": {"assumptions": ["p"], "formula": "p ->"}}]}"#,
    )
    .unwrap_err();
    assert_eq!(err.to_string().split(':').next(), Some("root.0"));
    assert!(matches!(load_derivation("[]"), Err(ProofFileError::Json(_))));
}

#[test]
fn generated_derivations_check() {
    for sys in SystemId::ALL {
        let ds = bounded_derivations(sys, &fs(&["p", "~p", "q"]), 2, 300);
        assert!(ds.len() > 20);
        for d in &ds {
            assert_eq!(check(d, sys), Ok(()), "{}", d.conclusion);
        }
    }
}

#[test]
fn no_theorems_from_empty_context() {
    for sys in SystemId::ALL {
        assert!(theorems_within(sys, &fs(&["p", "q", "~p"]), 3, 2000).is_empty());
    }
}
