//! Exact measures of LTL properties on Markov chains, and the progress of
//! a search.
//!
//! [`ltl_measure`] repeatedly takes the leftmost-innermost temporal
//! subformula whose operands are propositional, refines the chain so a fresh
//! atom `__pN` tracks it (see [`refine`]) and substitutes the atom. Once the
//! formula is propositional its measure is read off the initial
//! distribution. Cost is exponential in the number of temporal operators and
//! polynomial in the chain.

mod chain;
mod predicate;
pub mod refine;
mod solve;
mod until;

pub use chain::{chain_of, Chain, ChainState};
pub use predicate::StatePredicate;
pub use refine::{eliminate_next, eliminate_release, eliminate_until};
pub use until::{initial_value, until_prob, until_prob_sets};

use num_traits::One;

use crate::error::{Error, Result};
use crate::formula::Formula;
use crate::pts::{build_minimal_extension, Pts, Search};
use crate::qualitative::find_violation;
use crate::rational::Rational;

/// Fresh atom introduced by the `index`-th elimination.
pub fn fresh_atom(index: usize) -> String {
    format!("__p{index}")
}

/// Measure of the paths of `chain` satisfying `formula`.
///
/// Negation may occur only directly above atoms.
pub fn ltl_measure(chain: &Chain, formula: &Formula) -> Result<Rational> {
    ltl_measure_traced(chain, formula, |_| {})
}

/// [`ltl_measure`], calling `inspect` on the chain produced by every elimination step.
pub fn ltl_measure_traced(chain: &Chain, formula: &Formula, mut inspect: impl FnMut(&Chain)) -> Result<Rational> {
    if !formula.is_pnf() {
        return Err(Error::NotPnf(formula.to_string()));
    }
    let mut formula = formula.clone();
    let mut current: Option<Chain> = None;
    let mut step = 0;
    while let Some(sub) = innermost_temporal(&formula).cloned() {
        let atom = fresh_atom(step);
        let base = current.as_ref().unwrap_or(chain);
        let refined = eliminate(base, &sub, &atom)?;
        debug_assert_eq!(refined.check(), Ok(()), "refinement broke stochasticity");
        inspect(&refined);
        formula = substitute(&formula, &sub, &Formula::Atom(atom));
        current = Some(refined);
        step += 1;
    }
    let last = current.as_ref().unwrap_or(chain);
    let pred = StatePredicate::from_formula(&formula).expect("no temporal operators left");
    Ok(last.init().iter().zip(last.states()).filter(|(_, s)| pred.eval(&s.labels)).map(|(mass, _)| mass.clone()).sum())
}

fn eliminate(chain: &Chain, sub: &Formula, atom: &str) -> Result<Chain> {
    let pred = |f: &Formula| StatePredicate::from_formula(f).expect("operands are propositional");
    match sub {
        Formula::Next(f) => eliminate_next(chain, &pred(f), atom),
        Formula::Until(l, r) => eliminate_until(chain, &pred(l), &pred(r), atom),
        Formula::Release(l, r) => eliminate_release(chain, &pred(l), &pred(r), atom),
        _ => unreachable!("only temporal subformulas are eliminated"),
    }
}

/// Leftmost temporal subformula all of whose operands are propositional.
fn innermost_temporal(f: &Formula) -> Option<&Formula> {
    match f {
        Formula::True | Formula::False | Formula::Atom(_) => None,
        Formula::Not(x) => innermost_temporal(x),
        Formula::And(l, r) | Formula::Or(l, r) => innermost_temporal(l).or_else(|| innermost_temporal(r)),
        Formula::Next(x) => innermost_temporal(x).or(Some(f)),
        Formula::Until(l, r) | Formula::Release(l, r) => {
            innermost_temporal(l).or_else(|| innermost_temporal(r)).or(Some(f))
        }
    }
}

fn substitute(f: &Formula, target: &Formula, with: &Formula) -> Formula {
    if f == target {
        return with.clone();
    }
    let s = |x: &Formula| substitute(x, target, with);
    match f {
        Formula::True | Formula::False | Formula::Atom(_) => f.clone(),
        Formula::Not(x) => Formula::not(s(x)),
        Formula::And(l, r) => Formula::and(s(l), s(r)),
        Formula::Or(l, r) => Formula::or(s(l), s(r)),
        Formula::Next(x) => Formula::next(s(x)),
        Formula::Until(l, r) => Formula::until(s(l), s(r)),
        Formula::Release(l, r) => Formula::release(s(l), s(r)),
    }
}

/// Exact progress of `search` towards `formula`.
///
/// Fails with [`Error::ViolationFound`] when no extension of the search can
/// satisfy the formula on all paths, and with [`Error::NotPositive`] for
/// formulas containing negation.
pub fn prog_exact(model: &Pts, search: &Search, formula: &Formula) -> Result<Rational> {
    if !formula.is_positive() {
        return Err(Error::NotPositive(formula.to_string()));
    }
    if let Some(witness) = find_violation(model, search, formula)? {
        return Err(Error::ViolationFound { formula: formula.to_string(), witness: Box::new(witness) });
    }
    prog_exact_unchecked(model, search, formula)
}

/// Measure of `formula` on the minimal extension, without the violation check.
///
/// When the search has found a violation this is a diagnostic value, not
/// the progress.
pub fn prog_exact_unchecked(model: &Pts, search: &Search, formula: &Formula) -> Result<Rational> {
    if !formula.is_positive() {
        return Err(Error::NotPositive(formula.to_string()));
    }
    let (ext, _) = build_minimal_extension(model, search)?;
    ltl_measure(&chain_of(&ext), formula)
}

/// Formula-independent lower bound on progress: the probability that the
/// minimal extension never leaves the explored transitions.
pub fn prog_lower_bound(model: &Pts, search: &Search) -> Result<Rational> {
    let (ext, sink) = build_minimal_extension(model, search)?;
    let chain = chain_of(&ext);
    let goal: Vec<bool> = chain.states().iter().map(|s| s.name == sink).collect();
    let reach = until_prob_sets(&chain, &vec![true; chain.len()], &goal);
    Ok(Rational::one() - initial_value(&chain, &reach))
}
