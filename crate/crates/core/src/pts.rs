//! Probabilistic transition systems, searches and their extensions.
//!
//! A [`Pts`] keeps explicit transition identities: two transitions between
//! the same pair of states are distinct objects, and a [`Search`] is a set of
//! transition ids. The extension constructors close a search off with a
//! fresh sink state that absorbs all unexplored probability mass.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;

/// Atomic propositions holding in a state.
pub type LabelSet = BTreeSet<String>;

/// Id of the sink state added by the extension constructors.
pub const SINK: &str = "__sink";
/// Id of the sink's self-loop.
pub const SINK_LOOP: &str = "__t_sink";
/// Ids starting with this prefix are reserved for generated states and transitions.
pub const RESERVED_PREFIX: &str = "__";

/// Id of the completion transition that sends the unexplored mass of `state` to the sink.
pub fn completion_id(state: &str) -> String {
    format!("__t_{state}")
}

fn final_loop_id(state: &str) -> String {
    format!("__final_{state}")
}

pub(crate) fn is_valid_name(name: &str) -> bool {
    !name.is_empty() && name.bytes().all(|b| b.is_ascii_alphanumeric() || b == b'_')
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transition {
    pub source: String,
    pub target: String,
    pub prob: Rational,
}

/// A structural problem found by [`Pts::validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    MissingInitial(String),
    UnknownEndpoint { transition: String, state: String },
    ProbOutOfRange { transition: String, prob: Rational },
    OutgoingMass { state: String, mass: Rational },
    UnknownLabel { state: String, atom: String },
    BadName(String),
    ReservedId(String),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::MissingInitial(s) => write!(f, "initial state {s} is not a state"),
            Violation::UnknownEndpoint { transition, state } => {
                write!(f, "transition {transition} refers to unknown state {state}")
            }
            Violation::ProbOutOfRange { transition, prob } => {
                write!(f, "transition {transition} prob {prob} out of (0,1]")
            }
            Violation::OutgoingMass { state, mass } => {
                write!(f, "state {state} outgoing mass {mass} ≠ 1")
            }
            Violation::UnknownLabel { state, atom } => {
                write!(f, "state {state} is labeled with undeclared proposition {atom}")
            }
            Violation::BadName(name) => write!(f, "name `{name}` is not of the form [a-zA-Z0-9_]+"),
            Violation::ReservedId(id) => write!(f, "id {id} uses the reserved prefix `__`"),
        }
    }
}

/// A finite labeled probabilistic transition system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pts {
    ap: BTreeSet<String>,
    initial: String,
    states: BTreeMap<String, LabelSet>,
    transitions: BTreeMap<String, Transition>,
    outgoing: BTreeMap<String, BTreeSet<String>>,
}

impl Pts {
    pub fn new<I, S>(ap: I, initial: impl Into<String>) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Pts {
            ap: ap.into_iter().map(Into::into).collect(),
            initial: initial.into(),
            states: BTreeMap::new(),
            transitions: BTreeMap::new(),
            outgoing: BTreeMap::new(),
        }
    }

    /// Adds a state; fails if the id is taken.
    pub fn add_state<I, S>(&mut self, id: impl Into<String>, labels: I) -> Result<()>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let id = id.into();
        if self.states.contains_key(&id) {
            return Err(Error::Format(format!("duplicate state id {id}")));
        }
        self.states.insert(id, labels.into_iter().map(Into::into).collect());
        Ok(())
    }

    /// Adds a transition; fails if the id is taken. Endpoints and
    /// probability are checked by [`Pts::validate`], not here.
    pub fn add_transition(
        &mut self,
        id: impl Into<String>,
        source: impl Into<String>,
        target: impl Into<String>,
        prob: Rational,
    ) -> Result<()> {
        let id = id.into();
        if self.transitions.contains_key(&id) {
            return Err(Error::Format(format!("duplicate transition id {id}")));
        }
        let source = source.into();
        self.outgoing.entry(source.clone()).or_default().insert(id.clone());
        self.transitions.insert(id, Transition { source, target: target.into(), prob });
        Ok(())
    }

    pub fn ap(&self) -> &BTreeSet<String> {
        &self.ap
    }

    pub fn initial(&self) -> &str {
        &self.initial
    }

    pub fn states(&self) -> &BTreeMap<String, LabelSet> {
        &self.states
    }

    pub fn transitions(&self) -> &BTreeMap<String, Transition> {
        &self.transitions
    }

    pub fn label(&self, state: &str) -> Option<&LabelSet> {
        self.states.get(state)
    }

    pub fn transition(&self, id: &str) -> Option<&Transition> {
        self.transitions.get(id)
    }

    /// Ids of the transitions leaving `state`, in id order.
    pub fn outgoing(&self, state: &str) -> impl Iterator<Item = &str> + '_ {
        self.outgoing.get(state).into_iter().flatten().map(String::as_str)
    }

    /// Checks every structural invariant and lists all violations found.
    pub fn validate(&self) -> std::result::Result<(), Vec<Violation>> {
        let mut out = Vec::new();
        for atom in &self.ap {
            if !is_valid_name(atom) {
                out.push(Violation::BadName(atom.clone()));
            }
        }
        if !self.states.contains_key(&self.initial) {
            out.push(Violation::MissingInitial(self.initial.clone()));
        }
        for (id, labels) in &self.states {
            if !is_valid_name(id) {
                out.push(Violation::BadName(id.clone()));
            }
            for atom in labels {
                if !self.ap.contains(atom) {
                    out.push(Violation::UnknownLabel { state: id.clone(), atom: atom.clone() });
                }
            }
        }
        for (id, t) in &self.transitions {
            if !is_valid_name(id) {
                out.push(Violation::BadName(id.clone()));
            }
            for endpoint in [&t.source, &t.target] {
                if !self.states.contains_key(endpoint) {
                    out.push(Violation::UnknownEndpoint { transition: id.clone(), state: endpoint.clone() });
                }
            }
            if t.prob <= Rational::zero() || t.prob > Rational::one() {
                out.push(Violation::ProbOutOfRange { transition: id.clone(), prob: t.prob.clone() });
            }
        }
        for state in self.states.keys() {
            let mass = self.out_mass(state, |_| true);
            if !mass.is_one() {
                out.push(Violation::OutgoingMass { state: state.clone(), mass });
            }
        }
        if out.is_empty() {
            Ok(())
        } else {
            Err(out)
        }
    }

    /// [`Pts::validate`] plus rejection of user-supplied ids in the reserved `__` namespace.
    pub fn validate_input(&self) -> std::result::Result<(), Vec<Violation>> {
        let mut out = self.validate().err().unwrap_or_default();
        let ids = self.states.keys().chain(self.transitions.keys());
        for id in ids.filter(|id| id.starts_with(RESERVED_PREFIX)) {
            out.push(Violation::ReservedId(id.clone()));
        }
        if out.is_empty() {
            Ok(())
        } else {
            Err(out)
        }
    }

    /// Adds a probability-one self-loop to every state without outgoing transitions.
    pub fn complete_final_states(&self) -> Pts {
        let mut out = self.clone();
        for state in self.states.keys() {
            if self.outgoing(state).next().is_none() {
                out.add_transition(final_loop_id(state), state.clone(), state.clone(), Rational::one())
                    .expect("reserved id cannot clash with input ids");
            }
        }
        out
    }

    fn out_mass(&self, state: &str, mut keep: impl FnMut(&str) -> bool) -> Rational {
        self.outgoing(state).filter(|id| keep(id)).fold(Rational::zero(), |acc, id| acc + &self.transitions[id].prob)
    }
}

/// A finite set of explored transition ids.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Search(BTreeSet<String>);

impl Search {
    pub fn new() -> Self {
        Search::default()
    }

    pub fn insert(&mut self, id: impl Into<String>) -> bool {
        self.0.insert(id.into())
    }

    pub fn contains(&self, id: &str) -> bool {
        self.0.contains(id)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &str> + '_ {
        self.0.iter().map(String::as_str)
    }

    pub fn is_subset(&self, other: &Search) -> bool {
        self.0.is_subset(&other.0)
    }

    /// Fails on the first id that is not a transition of `model`.
    pub fn check_for(&self, model: &Pts) -> Result<()> {
        match self.0.iter().find(|id| model.transition(id).is_none()) {
            Some(id) => Err(Error::UnknownTransition(id.clone())),
            None => Ok(()),
        }
    }
}

impl<S: Into<String>> FromIterator<S> for Search {
    fn from_iter<I: IntoIterator<Item = S>>(iter: I) -> Self {
        Search(iter.into_iter().map(Into::into).collect())
    }
}

/// A finite prefix of an execution path, as a sequence of transition ids.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ExecPrefix(pub Vec<String>);

impl<S: Into<String>> FromIterator<S> for ExecPrefix {
    fn from_iter<I: IntoIterator<Item = S>>(iter: I) -> Self {
        ExecPrefix(iter.into_iter().map(Into::into).collect())
    }
}

impl ExecPrefix {
    /// Checks that the prefix starts in the initial state and that consecutive transitions chain.
    pub fn check_for(&self, model: &Pts) -> Result<()> {
        let mut at = model.initial();
        for (index, id) in self.0.iter().enumerate() {
            let broken = |reason: String| Error::BrokenPrefix { index, reason };
            let t = model.transition(id).ok_or_else(|| broken(format!("unknown transition {id}")))?;
            if t.source != at {
                return Err(broken(format!("transition {id} leaves {} but the path is at {at}", t.source)));
            }
            at = &t.target;
        }
        Ok(())
    }

    /// Product of the transition probabilities, i.e. the measure of the cylinder of this prefix.
    pub fn cylinder_measure(&self, model: &Pts) -> Result<Rational> {
        self.check_for(model)?;
        Ok(self.0.iter().fold(Rational::one(), |acc, id| acc * &model.transitions[id].prob))
    }
}

/// Labels of the visited states: `|prefix| + 1` entries.
pub fn trace_prefix(model: &Pts, prefix: &ExecPrefix) -> Result<Vec<LabelSet>> {
    prefix.check_for(model)?;
    let label = |s: &str| model.label(s).cloned().ok_or_else(|| Error::Format(format!("state {s} is not declared")));
    let mut out = vec![label(model.initial())?];
    for id in &prefix.0 {
        out.push(label(&model.transitions[id].target)?);
    }
    Ok(out)
}

/// The minimal extension: the search closed off by an unlabeled sink.
/// Returns the extension and the sink id.
pub fn build_minimal_extension(model: &Pts, search: &Search) -> Result<(Pts, String)> {
    build_extension(model, search, LabelSet::new())
}

/// Same as [`build_minimal_extension`] but the sink carries every proposition.
pub fn build_top_extension(model: &Pts, search: &Search) -> Result<(Pts, String)> {
    build_extension(model, search, model.ap().clone())
}

fn build_extension(model: &Pts, search: &Search, sink_label: LabelSet) -> Result<(Pts, String)> {
    search.check_for(model)?;
    let mut retained = BTreeSet::new();
    retained.insert(model.initial().to_string());
    for id in search.iter() {
        let t = &model.transitions[id];
        retained.insert(t.source.clone());
        retained.insert(t.target.clone());
    }

    let mut ext = Pts::new(model.ap().iter().cloned(), model.initial());
    for state in &retained {
        let labels = model.label(state).ok_or_else(|| Error::Format(format!("state {state} is not declared")))?;
        ext.add_state(state.clone(), labels.iter().cloned())?;
    }
    ext.add_state(SINK, sink_label)?;
    for id in search.iter() {
        let t = &model.transitions[id];
        ext.add_transition(id, t.source.clone(), t.target.clone(), t.prob.clone())?;
    }
    for state in &retained {
        let explored = model.out_mass(state, |id| search.contains(id));
        if explored < Rational::one() {
            ext.add_transition(completion_id(state), state.clone(), SINK, Rational::one() - explored)?;
        }
    }
    ext.add_transition(SINK_LOOP, SINK, SINK, Rational::one())?;
    Ok((ext, SINK.to_string()))
}

/// Whether `candidate` extends `search` of `base`.
///
/// Beyond identical ids, endpoints, probabilities and endpoint labels for
/// every search transition, the initial state id and its label must match
/// and the candidate must itself be a valid system.
pub fn check_extends(base: &Pts, search: &Search, candidate: &Pts) -> bool {
    if search.check_for(base).is_err() || candidate.validate().is_err() {
        return false;
    }
    if base.initial() != candidate.initial() || base.label(base.initial()) != candidate.label(candidate.initial()) {
        return false;
    }
    search.iter().all(|id| {
        let t = &base.transitions[id];
        match candidate.transition(id) {
            Some(c) => {
                c == t
                    && candidate.label(&t.source) == base.label(&t.source)
                    && candidate.label(&t.target) == base.label(&t.target)
            }
            None => false,
        }
    })
}
