use std::cmp::Reverse;
use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::formula::Formula;
use crate::measure::{prog_exact_unchecked, prog_lower_bound};
use crate::pts::{Pts, Search};
use crate::qualitative::has_found_violation;
use crate::rational::Rational;

/// Order in which an explorer expands its frontier.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Strategy {
    /// Oldest discovered transition first.
    Bfs,
    /// Newest discovered transition first.
    Dfs,
    /// Most probable transition first, ties broken by id.
    Greedy,
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Strategy::Bfs => "bfs",
            Strategy::Dfs => "dfs",
            Strategy::Greedy => "greedy",
        })
    }
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "bfs" => Ok(Strategy::Bfs),
            "dfs" => Ok(Strategy::Dfs),
            "greedy" => Ok(Strategy::Greedy),
            _ => Err(Error::InvalidArgument(format!("unknown strategy `{s}` (expected bfs, dfs or greedy)"))),
        }
    }
}

/// Explores up to `budget` transitions of `model`.
///
/// The frontier holds the unexplored transitions leaving the initial state
/// or the target of an explored transition. A state's outgoing transitions
/// are discovered in id order when the state is first reached.
pub fn explore(model: &Pts, strategy: Strategy, budget: usize) -> Search {
    explore_order(model, strategy, budget).into_iter().collect()
}

/// The transitions picked by [`explore`], in the order they were taken.
pub fn explore_order(model: &Pts, strategy: Strategy, budget: usize) -> Vec<String> {
    let mut frontier =
        Frontier { model, strategy, reached: BTreeSet::new(), queue: VecDeque::new(), ranked: BTreeSet::new() };
    let mut taken = Vec::new();
    frontier.discover(model.initial());
    while taken.len() < budget {
        let next = match strategy {
            Strategy::Bfs => frontier.queue.pop_front(),
            Strategy::Dfs => frontier.queue.pop_back(),
            Strategy::Greedy => frontier.ranked.pop_first().map(|(_, id)| id),
        };
        let Some(id) = next else { break };
        taken.push(id.to_string());
        frontier.discover(&model.transition(id).expect("frontier ids exist").target);
    }
    taken
}

struct Frontier<'m> {
    model: &'m Pts,
    strategy: Strategy,
    reached: BTreeSet<&'m str>,
    queue: VecDeque<&'m str>,
    // greedy order: descending probability, then id
    ranked: BTreeSet<(Reverse<Rational>, &'m str)>,
}

impl<'m> Frontier<'m> {
    fn discover(&mut self, state: &'m str) {
        if !self.reached.insert(state) {
            return;
        }
        for id in self.model.outgoing(state) {
            match self.strategy {
                Strategy::Greedy => {
                    let p = self.model.transition(id).expect("outgoing ids exist").prob.clone();
                    self.ranked.insert((Reverse(p), id));
                }
                _ => self.queue.push_back(id),
            }
        }
    }
}

/// Exact column of a progress curve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CurveValue {
    Progress(Rational),
    Violation,
}

impl fmt::Display for CurveValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CurveValue::Progress(p) => write!(f, "{p}"),
            CurveValue::Violation => f.write_str("VIOLATION"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveRow {
    pub budget: usize,
    pub search_size: usize,
    pub lower_bound: Rational,
    pub exact: CurveValue,
}

/// Progress of `strategy` at each budget.
pub fn progress_curve(model: &Pts, formula: &Formula, strategy: Strategy, budgets: &[usize]) -> Result<Vec<CurveRow>> {
    if !formula.is_positive() {
        return Err(Error::NotPositive(formula.to_string()));
    }
    if budgets.windows(2).any(|w| w[0] > w[1]) {
        return Err(Error::InvalidArgument("budgets must be ascending".into()));
    }
    let order = explore_order(model, strategy, budgets.last().copied().unwrap_or(0));
    budgets
        .iter()
        .map(|&budget| {
            let search: Search = order.iter().take(budget).cloned().collect();
            let lower_bound = prog_lower_bound(model, &search)?;
            let exact = if has_found_violation(model, &search, formula)? {
                CurveValue::Violation
            } else {
                CurveValue::Progress(prog_exact_unchecked(model, &search, formula)?)
            };
            Ok(CurveRow { budget, search_size: search.len(), lower_bound, exact })
        })
        .collect()
}

/// CSV rendering with header `budget,search_size,lower_bound,exact`.
pub fn curve_csv(rows: &[CurveRow]) -> String {
    let mut out = String::from("budget,search_size,lower_bound,exact\n");
    for r in rows {
        out.push_str(&format!("{},{},{},{}\n", r.budget, r.search_size, r.lower_bound, r.exact));
    }
    out
}
