mod common;

use common::*;
use lprog::measure::{eliminate_next, eliminate_release, eliminate_until, ltl_measure, StatePredicate};
use lprog::sim::random::{random_chain, random_pts};
use lprog::sim::{exact_bracket, explore};
use lprog::{
    build_minimal_extension, build_top_extension, chain_of, check_extends, eval_up_word, find_violation, parse,
    prog_exact, prog_lower_bound, universal_sat, Formula, Pts, Search, Strategy, UpWord,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn lane_evaluator_agrees_with_library_evaluation() {
    let u = enumerate(4, true);
    let mut out = Vec::new();
    for p in 0..=2 {
        for v in 1..=2 {
            let template = vec![Slot::Free; p + v];
            for lanes in batches(&template, p) {
                eval_lanes(&u.ops, &lanes, &mut out);
                let n = p + v;
                for lane in (0..64).filter(|l| lanes.valid >> l & 1 == 1) {
                    let w = lane_word(&lanes, lane);
                    for (k, f) in u.formulas.iter().enumerate() {
                        assert_eq!(out[k * n] >> lane & 1 == 1, eval_up_word(&w, f), "{f} on {w}");
                    }
                }
            }
        }
    }
}

#[test]
fn prefix_determinacy_fails_with_negation() {
    // with the empty word, !a holds on the empty tail but not after an a
    let f = parse("!a").unwrap();
    let empty = UpWord::new(vec![], vec![labels(&[])]).unwrap();
    let cont = UpWord::new(vec![], vec![labels(&["a"])]).unwrap();
    assert!(eval_up_word(&empty, &f) && !eval_up_word(&cont, &f));
}

#[test]
fn negation_normal_form_complements() {
    let words = all_words(3, 2);
    for f in enumerate(5, false).formulas.iter().chain(enumerate(4, true).formulas.iter()) {
        let neg = f.negate_to_pnf();
        assert!(neg.is_pnf(), "{neg}");
        for w in &words {
            assert_ne!(eval_up_word(w, f), eval_up_word(w, &neg), "{f} vs {neg} on {w}");
        }
    }
}

#[test]
fn printing_round_trips_on_all_small_formulas() {
    for f in enumerate(5, true).formulas {
        let text = f.to_string();
        assert_eq!(parse(&text).unwrap(), f, "{text}");
    }
}

mod round_trip {
    use lprog::{parse, Formula};
    use proptest::prelude::*;

    fn formula() -> impl Strategy<Value = Formula> {
        let leaf = prop_oneof![
            Just(Formula::True),
            Just(Formula::False),
            "[a-c]|x_1|Go".prop_map(Formula::atom),
            "[a-c]".prop_map(|a| Formula::not(Formula::atom(a))),
        ];
        leaf.prop_recursive(5, 40, 2, |inner| {
            prop_oneof![
                (inner.clone(), inner.clone()).prop_map(|(l, r)| Formula::and(l, r)),
                (inner.clone(), inner.clone()).prop_map(|(l, r)| Formula::or(l, r)),
                inner.clone().prop_map(Formula::next),
                (inner.clone(), inner.clone()).prop_map(|(l, r)| Formula::until(l, r)),
                (inner.clone(), inner.clone()).prop_map(|(l, r)| Formula::release(l, r)),
                inner.clone().prop_map(|f| Formula::not(Formula::next(f))),
            ]
        })
    }

    proptest! {
        #[test]
        fn parse_inverts_print(f in formula()) {
            prop_assert_eq!(parse(&f.to_string()).unwrap(), f);
        }
    }
}

#[test]
fn refinement_preserves_measures_of_old_events() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let atoms = ["a", "b", "c"];
    for _ in 0..40 {
        let chain = random_chain(&mut rng, 6, 3);
        let x1 = StatePredicate::from_formula(&random_prop(&mut rng, &atoms, 2)).unwrap();
        let x2 = StatePredicate::from_formula(&random_prop(&mut rng, &atoms, 2)).unwrap();
        let refined = [
            eliminate_next(&chain, &x1, "fresh").unwrap(),
            eliminate_until(&chain, &x1, &x2, "fresh").unwrap(),
            eliminate_release(&chain, &x1, &x2, "fresh").unwrap(),
        ];
        for _ in 0..4 {
            let f = random_ltl(&mut rng, &atoms, 3, true);
            let before = ltl_measure(&chain, &f).unwrap();
            for r in &refined {
                assert_eq!(r.check(), Ok(()));
                assert_eq!(ltl_measure(r, &f).unwrap(), before, "{f}");
            }
        }
    }
}

fn corpus() -> Vec<Pts> {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let mut models = vec![triad(), half_loop(), line()];
    models.extend((0..12).map(|_| random_pts(&mut rng, 6, 2, 3, 2)));
    models
}

fn corpus_formulas() -> Vec<Formula> {
    ["G a", "F a", "F b", "X b", "a U b", "b R a", "G (a | b)", "F (a & X b)", "X X a", "a W b", "true"]
        .iter()
        .map(|t| parse(t).unwrap())
        .collect()
}

fn searches(model: &Pts) -> Vec<Search> {
    let mut out = Vec::new();
    for s in [Strategy::Bfs, Strategy::Dfs, Strategy::Greedy] {
        for b in 0..=model.transitions().len() {
            out.push(explore(model, s, b));
        }
    }
    out
}

#[test]
fn lower_bound_is_below_progress_and_tight_for_invariants() {
    let ga = parse("G a").unwrap();
    let mut compared = 0;
    for model in corpus() {
        let full = chain_of(&model);
        for s in searches(&model) {
            let bound = prog_lower_bound(&model, &s).unwrap();
            for f in corpus_formulas() {
                if find_violation(&model, &s, &f).unwrap().is_some() {
                    continue;
                }
                let exact = prog_exact(&model, &s, &f).unwrap();
                assert!(bound <= exact, "{f}: {bound} > {exact}");
                assert!(exact <= ltl_measure(&full, &f).unwrap(), "{f}: progress above the measure");
                if f == ga {
                    assert_eq!(bound, exact);
                }
                compared += 1;
            }
        }
    }
    assert!(compared > 500, "only {compared} comparisons");
}

#[test]
fn lower_bound_grows_with_nested_searches() {
    for model in corpus() {
        for s in [Strategy::Bfs, Strategy::Dfs, Strategy::Greedy] {
            let mut last = None;
            for b in 0..=model.transitions().len() {
                let search = explore(&model, s, b);
                if let Some((prev_search, prev_bound)) = &last {
                    assert!(Search::is_subset(prev_search, &search));
                    assert!(prog_lower_bound(&model, &search).unwrap() >= *prev_bound);
                }
                let bound = prog_lower_bound(&model, &search).unwrap();
                last = Some((search, bound));
            }
        }
    }
}

#[test]
fn extensions_are_valid_and_extend() {
    for model in corpus() {
        for s in searches(&model) {
            let (min, _) = build_minimal_extension(&model, &s).unwrap();
            let (top, _) = build_top_extension(&model, &s).unwrap();
            assert_eq!(min.validate(), Ok(()));
            assert!(check_extends(&model, &s, &min));
            assert!(check_extends(&model, &s, &top));
        }
    }
}

#[test]
fn without_violation_explored_lassos_satisfy() {
    for model in corpus() {
        for s in searches(&model) {
            let (ext, sink) = build_minimal_extension(&model, &s).unwrap();
            let lassos = lasso_words(&ext, 5);
            for f in corpus_formulas() {
                if find_violation(&model, &s, &f).unwrap().is_some() {
                    continue;
                }
                for (path, w) in lassos.iter().filter(|(p, _)| !p.contains(&sink)) {
                    assert!(eval_up_word(w, &f), "{f} fails on explored lasso {path:?}");
                }
            }
        }
    }
}

#[test]
fn universal_checks_agree_with_lasso_enumeration() {
    for model in corpus() {
        let lassos = lasso_words(&model, 5);
        for f in corpus_formulas() {
            let universal = universal_sat(&model, &f).unwrap();
            let refuted = lassos.iter().any(|(_, w)| !eval_up_word(w, &f));
            if refuted {
                assert!(!universal, "{f}: a lasso violates it");
            }
            match lprog::qualitative::counterexample(&model, &f).unwrap() {
                Some(witness) => {
                    assert!(!universal);
                    // the witness is a real path of the model violating f
                    let states: Vec<&String> = witness.prefix.iter().chain(&witness.cycle).collect();
                    assert_eq!(states[0], model.initial());
                    let edge = |a: &str, b: &str| model.transitions().values().any(|t| t.source == a && t.target == b);
                    for pair in states.windows(2) {
                        assert!(edge(pair[0], pair[1]));
                    }
                    assert!(edge(witness.cycle.last().unwrap(), &witness.cycle[0]));
                    let label = |s: &String| model.label(s).unwrap().clone();
                    let w = UpWord::new(
                        witness.prefix.iter().map(label).collect(),
                        witness.cycle.iter().map(label).collect(),
                    )
                    .unwrap();
                    assert!(!eval_up_word(&w, &f), "{f}: witness {witness} satisfies it");
                }
                None => assert!(universal),
            }
        }
    }
}

#[test]
fn exhaustive_brackets_contain_the_measure() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for model in corpus() {
        let chain = chain_of(&model);
        for f in corpus_formulas() {
            let horizon = rng.gen_range(1..=5);
            let b = exact_bracket(&chain, &f, horizon).unwrap();
            let m = ltl_measure(&chain, &f).unwrap();
            assert!(b.lo() <= m && m <= b.hi(), "{f} at horizon {horizon}: {m} outside [{}, {}]", b.lo(), b.hi());
        }
    }
}
