use std::collections::VecDeque;

use num_traits::{One, Zero};

use super::chain::Chain;
use super::predicate::StatePredicate;
use super::solve::FixpointSystem;
use crate::rational::Rational;

/// Per-state probability of `A U B`, with `A` and `B` read as state predicates.
pub fn until_prob(chain: &Chain, hold: &StatePredicate, goal: &StatePredicate) -> Vec<Rational> {
    let hold: Vec<bool> = chain.states().iter().map(|s| hold.eval(&s.labels)).collect();
    let goal: Vec<bool> = chain.states().iter().map(|s| goal.eval(&s.labels)).collect();
    until_prob_sets(chain, &hold, &goal)
}

/// [`until_prob`] over explicit state sets.
///
/// States that cannot reach `goal` through `hold` states get 0, states that
/// reach it almost surely get 1 (both decided on the graph alone), and the
/// rest solve the linear system exactly.
pub fn until_prob_sets(chain: &Chain, hold: &[bool], goal: &[bool]) -> Vec<Rational> {
    let n = chain.len();
    let preds = chain.predecessors();
    let waiting: Vec<bool> = (0..n).map(|s| hold[s] && !goal[s]).collect();

    let can_reach = backward_closure(&preds, &waiting, (0..n).filter(|&s| goal[s]));
    let zero: Vec<bool> = can_reach.iter().map(|r| !r).collect();
    // q_s < 1 iff a zero state is reachable through waiting states
    let can_fail = backward_closure(&preds, &waiting, (0..n).filter(|&s| zero[s]));

    let mut q = vec![Rational::zero(); n];
    let mut var = vec![usize::MAX; n];
    let mut unknown = Vec::new();
    for s in 0..n {
        if can_reach[s] && !can_fail[s] {
            q[s] = Rational::one();
        } else if can_reach[s] && waiting[s] {
            var[s] = unknown.len();
            unknown.push(s);
        }
    }
    if unknown.is_empty() {
        return q;
    }

    let mut system = FixpointSystem::new(unknown.len());
    for (i, &s) in unknown.iter().enumerate() {
        for (t, p) in chain.row(s) {
            if var[*t] != usize::MAX {
                system.add_coef(i, var[*t], p);
            } else if q[*t].is_one() {
                system.add_rhs(i, p);
            }
        }
    }
    for (value, &s) in system.solve().into_iter().zip(&unknown) {
        q[s] = value;
    }
    q
}

// Seeds plus every `through` state with a successor already in the set.
fn backward_closure(preds: &[Vec<usize>], through: &[bool], seeds: impl Iterator<Item = usize>) -> Vec<bool> {
    let mut marked = vec![false; preds.len()];
    let mut queue = VecDeque::new();
    for s in seeds {
        marked[s] = true;
        queue.push_back(s);
    }
    while let Some(t) = queue.pop_front() {
        for &s in &preds[t] {
            if through[s] && !marked[s] {
                marked[s] = true;
                queue.push_back(s);
            }
        }
    }
    marked
}

/// Probability mass of `A U B` under the chain's initial distribution.
pub fn initial_value(chain: &Chain, per_state: &[Rational]) -> Rational {
    chain.init().iter().zip(per_state).filter(|(i, _)| !i.is_zero()).map(|(i, q)| i * q).sum()
}
