use onsup_core::dfa::{lasso_validate, progression_automaton, LassoOptions, TranslateOptions};
use onsup_core::harness::random::random_formula;
use onsup_core::harness::rng::SimRng;
use onsup_core::{
    export_dfa_string, import_dfa_str, is_good_prefix, parse_formula, translate, translate_with, Error, ImportMode,
    Vocabulary,
};
use proptest::prelude::*;

fn vocab() -> Vocabulary {
    Vocabulary::new(["a", "b", "c"]).unwrap()
}

#[test]
fn random_formulas_pass_lasso_validation() {
    let v = vocab();
    let mut rng = SimRng::new(2024);
    for _ in 0..30 {
        let f = random_formula(&mut rng, &v, 4);
        let d = translate(&f, &v).unwrap();
        let report = lasso_validate(&d, &f, 4, 3, LassoOptions::default()).unwrap();
        assert!(report.passed(), "{}: {:?}", f.display(&v), report.mismatches.first());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn minimization_preserves_language(seed in any::<u64>()) {
        let v = vocab();
        let f = random_formula(&mut SimRng::new(seed), &v, 4);
        let raw = progression_automaton(&f, &v, TranslateOptions::default()).unwrap();
        let min = raw.minimize();
        prop_assert_eq!(raw.distinguishing_word(&min).unwrap(), None);
        prop_assert!(min.num_states() <= raw.num_states());
        prop_assert_eq!(min.minimize().num_states(), min.num_states());
    }

    #[test]
    fn accepting_states_are_absorbing(seed in any::<u64>()) {
        let v = vocab();
        let f = random_formula(&mut SimRng::new(seed), &v, 4);
        let d = translate(&f, &v).unwrap();
        for s in 0..d.num_states() {
            if d.is_accepting(s) {
                for l in v.letters() {
                    prop_assert_eq!(d.next(s, l), s);
                }
            }
        }
    }

    #[test]
    fn dfa_agrees_with_progression(seed in any::<u64>(), w in proptest::collection::vec(0u64..8, 0..6)) {
        let v = vocab();
        let f = random_formula(&mut SimRng::new(seed), &v, 4);
        let d = translate(&f, &v).unwrap();
        let w: Vec<_> = w.into_iter().map(onsup_core::Letter::from_bits).collect();
        prop_assert_eq!(d.accepts(&w), is_good_prefix(&f, &w));
    }

    #[test]
    fn json_round_trip_preserves_language(seed in any::<u64>()) {
        let v = vocab();
        let f = random_formula(&mut SimRng::new(seed), &v, 3);
        let d = translate(&f, &v).unwrap();
        let back = import_dfa_str(&export_dfa_string(&d), ImportMode::Strict).unwrap();
        prop_assert_eq!(d.distinguishing_word(&back).unwrap(), None);
    }
}

#[test]
fn state_budget_is_enforced() {
    let v = vocab();
    let f = parse_formula("X X X a & F b & F c", &v).unwrap();
    let r = translate_with(&f, &v, TranslateOptions { max_states: 2 });
    assert!(matches!(r, Err(Error::Resource { .. })));
}

#[test]
fn true_and_unsatisfiable_shapes() {
    let v = vocab();
    let t = translate(&parse_formula("true", &v).unwrap(), &v).unwrap();
    assert_eq!(t.num_states(), 1);
    assert!(t.accepts(&[]));
    let x = translate(&parse_formula("a & !a", &v).unwrap(), &v).unwrap();
    assert_eq!(x.num_states(), 1);
    assert_eq!(x.accepting_count(), 0);
}
