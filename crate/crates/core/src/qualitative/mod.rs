//! Universal path checking with Büchi automata.
//!
//! A search has found a violation of a positive formula when no extension
//! of it satisfies the formula on every path. Because positive formulas are
//! monotone in the labels, it suffices to check the extension whose sink
//! carries every proposition ([`build_top_extension`]).

mod automaton;
mod gnba;
mod lasso;
mod nba;

use std::fmt;

use serde::Serialize;

pub use gnba::{gnba_of, Gnba};
pub use nba::Nba;

use crate::error::{Error, Result};
use crate::formula::Formula;
use crate::pts::{build_top_extension, Pts, Search};

/// A path of a model, `prefix` followed by `cycle` repeated forever, that
/// violates a formula.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub prefix: Vec<String>,
    pub cycle: Vec<String>,
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.prefix {
            write!(f, "{s} ")?;
        }
        write!(f, "({})^ω", self.cycle.join(" "))
    }
}

/// The automaton of `formula` (PNF), degeneralized.
pub fn nba_of(formula: &Formula) -> Result<Nba> {
    Ok(Nba::from(&gnba_of(formula)?))
}

/// Whether every path of `model` satisfies `formula`. Probabilities are
/// ignored: every transition counts as possible.
pub fn universal_sat(model: &Pts, formula: &Formula) -> Result<bool> {
    Ok(counterexample(model, formula)?.is_none())
}

/// A path of `model` violating `formula`, if there is one.
pub fn counterexample(model: &Pts, formula: &Formula) -> Result<Option<Witness>> {
    let nba = nba_of(&formula.negate_to_pnf())?;
    let ids: Vec<&String> = model.states().keys().collect();
    let index = |id: &str| ids.binary_search_by(|s| s.as_str().cmp(id)).expect("transition endpoints are states");
    let letters: Vec<u32> = model.states().values().map(|l| nba.aut.project(l)).collect();
    let mut succ: Vec<Vec<usize>> = vec![Vec::new(); ids.len()];
    for t in model.transitions().values() {
        succ[index(&t.source)].push(index(&t.target));
    }
    for row in &mut succ {
        row.sort_unstable();
        row.dedup();
    }
    let found = nba.aut.product(&[index(model.initial())], |v| letters[v], |v| succ[v].as_slice());
    Ok(found.map(|(prefix, cycle)| {
        let name = |pairs: &[(usize, usize)]| pairs.iter().map(|&(v, _)| ids[v].clone()).collect::<Vec<_>>();
        let mut prefix = name(&prefix);
        prefix.pop();
        Witness { prefix, cycle: name(&cycle) }
    }))
}

/// Whether `search` has found a violation of the positive `formula`.
pub fn has_found_violation(model: &Pts, search: &Search, formula: &Formula) -> Result<bool> {
    Ok(find_violation(model, search, formula)?.is_some())
}

/// A path of the top extension violating `formula`, proving that the
/// search has found a violation.
pub fn find_violation(model: &Pts, search: &Search, formula: &Formula) -> Result<Option<Witness>> {
    if !formula.is_positive() {
        return Err(Error::NotPositive(formula.to_string()));
    }
    let (top, _) = build_top_extension(model, search)?;
    counterexample(&top, formula)
}
