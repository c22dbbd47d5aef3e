use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::pts::{LabelSet, Pts};
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainState {
    pub name: String,
    pub labels: LabelSet,
}

/// A finite Markov chain with exact transition probabilities and an
/// initial distribution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chain {
    states: Vec<ChainState>,
    rows: Vec<Vec<(usize, Rational)>>,
    init: Vec<Rational>,
}

impl Chain {
    /// Builds a chain and checks that it is stochastic.
    pub fn new(states: Vec<ChainState>, rows: Vec<Vec<(usize, Rational)>>, init: Vec<Rational>) -> Result<Self> {
        let chain = Chain::from_parts(states, rows, init);
        chain.check().map_err(Error::InvalidArgument)?;
        Ok(chain)
    }

    /// Rows are sorted by successor and parallel entries merged.
    pub(crate) fn from_parts(states: Vec<ChainState>, rows: Vec<Vec<(usize, Rational)>>, init: Vec<Rational>) -> Self {
        let rows = rows.into_iter().map(merge_row).collect();
        Chain { states, rows, init }
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn states(&self) -> &[ChainState] {
        &self.states
    }

    pub fn labels(&self, state: usize) -> &LabelSet {
        &self.states[state].labels
    }

    pub fn row(&self, state: usize) -> &[(usize, Rational)] {
        &self.rows[state]
    }

    pub fn init(&self) -> &[Rational] {
        &self.init
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.states.iter().position(|s| s.name == name)
    }

    pub fn edge_count(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    /// Probability of the one-step move `from → to`, zero if absent.
    pub fn prob(&self, from: usize, to: usize) -> Rational {
        self.rows[from]
            .binary_search_by_key(&to, |(t, _)| *t)
            .map(|i| self.rows[from][i].1.clone())
            .unwrap_or_else(|_| Rational::zero())
    }

    /// Whether some label anywhere in the chain contains `atom`.
    pub fn mentions(&self, atom: &str) -> bool {
        self.states.iter().any(|s| s.labels.contains(atom))
    }

    /// Verifies that every row sums to one with positive entries and the
    /// initial distribution has total mass one.
    pub fn check(&self) -> std::result::Result<(), String> {
        let n = self.states.len();
        if self.rows.len() != n || self.init.len() != n {
            return Err(format!(
                "chain has {n} states but {} rows and {} initial entries",
                self.rows.len(),
                self.init.len()
            ));
        }
        for (s, row) in self.rows.iter().enumerate() {
            let mut sum = Rational::zero();
            for (t, p) in row {
                if *t >= n {
                    return Err(format!("row {s} points to missing state {t}"));
                }
                if *p <= Rational::zero() {
                    return Err(format!("row {s} has non-positive entry {p}"));
                }
                sum += p;
            }
            if !sum.is_one() {
                return Err(format!("row of {} sums to {sum}", self.states[s].name));
            }
        }
        if self.init.iter().any(|p| *p < Rational::zero()) {
            return Err("negative initial mass".into());
        }
        let mass: Rational = self.init.iter().sum();
        if !mass.is_one() {
            return Err(format!("initial mass is {mass}"));
        }
        Ok(())
    }

    pub(crate) fn predecessors(&self) -> Vec<Vec<usize>> {
        let mut preds = vec![Vec::new(); self.len()];
        for (s, row) in self.rows.iter().enumerate() {
            for (t, _) in row {
                preds[*t].push(s);
            }
        }
        preds
    }
}

fn merge_row(row: Vec<(usize, Rational)>) -> Vec<(usize, Rational)> {
    let mut merged: BTreeMap<usize, Rational> = BTreeMap::new();
    for (t, p) in row {
        *merged.entry(t).or_insert_with(Rational::zero) += p;
    }
    merged.into_iter().collect()
}

/// The chain underlying a validated system: states in id order, parallel
/// transitions merged, all initial mass on the initial state.
pub fn chain_of(model: &Pts) -> Chain {
    let index: BTreeMap<&str, usize> = model.states().keys().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
    let states =
        model.states().iter().map(|(name, labels)| ChainState { name: name.clone(), labels: labels.clone() }).collect();
    let mut rows = vec![Vec::new(); index.len()];
    for t in model.transitions().values() {
        rows[index[t.source.as_str()]].push((index[t.target.as_str()], t.prob.clone()));
    }
    let mut init = vec![Rational::zero(); index.len()];
    init[index[model.initial()]] = Rational::one();
    Chain::from_parts(states, rows, init)
}
