//! Seeded random models and chains for tests and benchmarks.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::measure::{Chain, ChainState};
use crate::pts::{LabelSet, Pts};
use crate::rational::Rational;

/// Splits one into `parts` positive rationals with small denominators.
fn split_one(rng: &mut impl Rng, parts: usize) -> Vec<Rational> {
    let weights: Vec<i64> = (0..parts).map(|_| rng.gen_range(1..=4)).collect();
    let total: i64 = weights.iter().sum();
    weights.into_iter().map(|w| Rational::new(w.into(), total.into())).collect()
}

fn random_labels(rng: &mut impl Rng, atoms: &[String]) -> LabelSet {
    atoms.iter().filter(|_| rng.gen_bool(0.5)).cloned().collect()
}

fn atom_names(count: usize) -> Vec<String> {
    (0..count).map(|i| ((b'a' + (i % 26) as u8) as char).to_string()).collect()
}

/// A model with states `s0 … s{n-1}` whose transitions mostly stay within
/// `window` positions, so that partial explorations stay well conditioned.
/// Every state has between one and `max_out` outgoing transitions.
pub fn random_pts(rng: &mut impl Rng, states: usize, atoms: usize, max_out: usize, window: usize) -> Pts {
    assert!(states > 0 && max_out > 0);
    let atoms = atom_names(atoms);
    let name = |i: usize| format!("s{i}");
    let mut model = Pts::new(atoms.iter().cloned(), name(0));
    for i in 0..states {
        model.add_state(name(i), random_labels(rng, &atoms)).expect("fresh state id");
    }
    let mut next_id = 0;
    for i in 0..states {
        let lo = i.saturating_sub(window);
        let hi = (i + window).min(states - 1);
        let mut candidates: Vec<usize> = (lo..=hi).collect();
        candidates.shuffle(rng);
        let out = rng.gen_range(1..=max_out).min(candidates.len());
        for (target, p) in candidates.into_iter().take(out).zip(split_one(rng, out)) {
            model.add_transition(format!("t{next_id}"), name(i), name(target), p).expect("fresh transition id");
            next_id += 1;
        }
    }
    model
}

/// A model with states `s0 … s{n-1}` laid out in a line. Each state has a
/// transition up to `window` steps forward and up to `max_out - 1` more,
/// each pointing backward (within `window`) with probability `back`. The
/// last `window` states are absorbing and carry every atom, so the model
/// has no dead ends and long runs reach the goal region.
pub fn layered_pts(rng: &mut impl Rng, states: usize, atoms: usize, max_out: usize, window: usize, back: f64) -> Pts {
    assert!(states > window && max_out > 0 && window > 0);
    let atoms = atom_names(atoms);
    let name = |i: usize| format!("s{i}");
    let goal_from = states - window;
    let mut model = Pts::new(atoms.iter().cloned(), name(0));
    for i in 0..states {
        let labels = if i >= goal_from { atoms.iter().cloned().collect() } else { random_labels(rng, &atoms) };
        model.add_state(name(i), labels).expect("fresh state id");
    }
    let mut next_id = 0;
    for i in 0..states {
        let mut targets = vec![];
        if i >= goal_from {
            targets.push(i);
        } else {
            let forward = |rng: &mut _| Rng::gen_range(rng, i + 1..=(i + window).min(states - 1));
            targets.push(forward(rng));
            for _ in 1..rng.gen_range(1..=max_out) {
                let t =
                    if i > 0 && rng.gen_bool(back) { rng.gen_range(i.saturating_sub(window)..i) } else { forward(rng) };
                if !targets.contains(&t) {
                    targets.push(t);
                }
            }
        }
        let probs = split_one(rng, targets.len());
        for (t, p) in targets.into_iter().zip(probs) {
            model.add_transition(format!("t{next_id}"), name(i), name(t), p).expect("fresh transition id");
            next_id += 1;
        }
    }
    model
}

/// A chain over at most `max_states` states with arbitrary successors and a
/// point-mass initial distribution.
pub fn random_chain(rng: &mut impl Rng, max_states: usize, atoms: usize) -> Chain {
    let n = rng.gen_range(1..=max_states);
    let atoms = atom_names(atoms);
    let states = (0..n).map(|i| ChainState { name: format!("s{i}"), labels: random_labels(rng, &atoms) }).collect();
    let rows = (0..n)
        .map(|_| {
            let out = rng.gen_range(1..=n.min(3));
            let mut targets: Vec<usize> = (0..n).collect();
            targets.shuffle(rng);
            targets.into_iter().take(out).zip(split_one(rng, out)).collect()
        })
        .collect();
    let mut init = vec![Rational::from_integer(0.into()); n];
    init[rng.gen_range(0..n)] = Rational::from_integer(1.into());
    Chain::new(states, rows, init).expect("rows are stochastic by construction")
}
