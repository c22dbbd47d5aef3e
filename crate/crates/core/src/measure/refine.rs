//! Temporal-operator elimination by chain refinement.
//!
//! Each step replaces one temporal subformula with propositional operands by
//! a fresh atom `p`, refining the chain so that `p` holds at a state exactly
//! when (almost surely) the subformula holds on the path from there. The
//! measure of every event over the original labels is unchanged.
//!
//! * `X ξ`: states become edges `(s,t)`; `p` marks edges whose target satisfies `ξ`.
//! * `ξ1 U ξ2` and `ξ1 R ξ2`: states become `(s,⊤)` / `(s,⊥)` guessing the
//!   truth of the subformula. Where the value is already decided at `s` the
//!   next guess is drawn fresh; where it is deferred the guess is carried
//!   forward with Bayes-conditioned probabilities.

use num_traits::{One, Zero};

use super::chain::{Chain, ChainState};
use super::predicate::StatePredicate;
use super::until::until_prob;
use crate::error::{Error, Result};
use crate::rational::Rational;

fn ensure_fresh(chain: &Chain, atom: &str) -> Result<()> {
    if chain.mentions(atom) {
        return Err(Error::AtomNotFresh(atom.to_string()));
    }
    Ok(())
}

/// Refines by edges so that `atom` marks states whose next state satisfies `next`.
pub fn eliminate_next(chain: &Chain, next: &StatePredicate, atom: &str) -> Result<Chain> {
    ensure_fresh(chain, atom)?;
    let mut first_edge = Vec::with_capacity(chain.len() + 1);
    let mut states = Vec::with_capacity(chain.edge_count());
    let mut init = Vec::with_capacity(chain.edge_count());
    for s in 0..chain.len() {
        first_edge.push(states.len());
        for (t, p) in chain.row(s) {
            let mut labels = chain.labels(s).clone();
            if next.eval(chain.labels(*t)) {
                labels.insert(atom.to_string());
            }
            states
                .push(ChainState { name: format!("({},{})", chain.states()[s].name, chain.states()[*t].name), labels });
            init.push(&chain.init()[s] * p);
        }
    }
    first_edge.push(states.len());

    let mut rows = Vec::with_capacity(states.len());
    for s in 0..chain.len() {
        for (t, _) in chain.row(s) {
            let base = first_edge[*t];
            rows.push(chain.row(*t).iter().enumerate().map(|(k, (_, p))| (base + k, p.clone())).collect());
        }
    }
    Ok(Chain::from_parts(states, rows, init))
}

/// Refines by the truth of `hold U goal`, marked by `atom`.
pub fn eliminate_until(chain: &Chain, hold: &StatePredicate, goal: &StatePredicate, atom: &str) -> Result<Chain> {
    ensure_fresh(chain, atom)?;
    let q = until_prob(chain, hold, goal);
    let class = |labels: &crate::pts::LabelSet| {
        if hold.eval(labels) && !goal.eval(labels) {
            Decision::Deferred
        } else {
            Decision::Now
        }
    };
    Ok(refine_bits(chain, &q, class, atom))
}

/// Refines by the truth of `stop R keep`, marked by `atom`.
///
/// The per-state probability is `1 − P(!stop U !keep)`.
pub fn eliminate_release(chain: &Chain, stop: &StatePredicate, keep: &StatePredicate, atom: &str) -> Result<Chain> {
    ensure_fresh(chain, atom)?;
    let violated = until_prob(chain, &StatePredicate::not(stop.clone()), &StatePredicate::not(keep.clone()));
    let q: Vec<Rational> = violated.into_iter().map(|v| Rational::one() - v).collect();
    let class = |labels: &crate::pts::LabelSet| {
        if keep.eval(labels) && !stop.eval(labels) {
            Decision::Deferred
        } else {
            Decision::Now
        }
    };
    Ok(refine_bits(chain, &q, class, atom))
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Decision {
    /// The subformula's value is fixed by the current state; the guess for
    /// the successor is independent.
    Now,
    /// The value equals the successor's value.
    Deferred,
}

fn refine_bits(chain: &Chain, q: &[Rational], class: impl Fn(&crate::pts::LabelSet) -> Decision, atom: &str) -> Chain {
    let n = chain.len();
    let mut top = vec![None; n];
    let mut bot = vec![None; n];
    let mut states = Vec::new();
    let mut init = Vec::new();
    let mut origin = Vec::new();
    for s in 0..n {
        let name = &chain.states()[s].name;
        if !q[s].is_zero() {
            top[s] = Some(states.len());
            let mut labels = chain.labels(s).clone();
            labels.insert(atom.to_string());
            states.push(ChainState { name: format!("({name},⊤)"), labels });
            init.push(&chain.init()[s] * &q[s]);
            origin.push((s, true));
        }
        if !q[s].is_one() {
            bot[s] = Some(states.len());
            states.push(ChainState { name: format!("({name},⊥)"), labels: chain.labels(s).clone() });
            init.push(&chain.init()[s] * (Rational::one() - &q[s]));
            origin.push((s, false));
        }
    }

    let rows = origin
        .iter()
        .map(|&(s, bit)| {
            let mut row = Vec::new();
            let deferred = class(chain.labels(s)) == Decision::Deferred;
            for (t, p) in chain.row(s) {
                let t = *t;
                if deferred {
                    // condition on keeping the guessed value
                    if bit {
                        if let Some(to) = top[t] {
                            row.push((to, p * &q[t] / &q[s]));
                        }
                    } else if let Some(to) = bot[t] {
                        let stay = Rational::one() - &q[t];
                        row.push((to, p * stay / (Rational::one() - &q[s])));
                    }
                } else {
                    if let Some(to) = top[t] {
                        row.push((to, p * &q[t]));
                    }
                    if let Some(to) = bot[t] {
                        row.push((to, p * (Rational::one() - &q[t])));
                    }
                }
            }
            row
        })
        .collect();
    Chain::from_parts(states, rows, init)
}
