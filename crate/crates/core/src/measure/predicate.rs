use std::fmt;

use crate::formula::Formula;
use crate::pts::LabelSet;

/// A propositional condition on a state's label set.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum StatePredicate {
    True,
    False,
    Atom(String),
    Not(Box<StatePredicate>),
    And(Box<StatePredicate>, Box<StatePredicate>),
    Or(Box<StatePredicate>, Box<StatePredicate>),
}

impl StatePredicate {
    pub fn atom(name: impl Into<String>) -> Self {
        StatePredicate::Atom(name.into())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(p: StatePredicate) -> Self {
        StatePredicate::Not(Box::new(p))
    }

    pub fn and(l: StatePredicate, r: StatePredicate) -> Self {
        StatePredicate::And(Box::new(l), Box::new(r))
    }

    pub fn or(l: StatePredicate, r: StatePredicate) -> Self {
        StatePredicate::Or(Box::new(l), Box::new(r))
    }

    /// Converts a formula without temporal operators; `None` otherwise.
    pub fn from_formula(f: &Formula) -> Option<Self> {
        Some(match f {
            Formula::True => StatePredicate::True,
            Formula::False => StatePredicate::False,
            Formula::Atom(a) => StatePredicate::Atom(a.clone()),
            Formula::Not(x) => StatePredicate::not(Self::from_formula(x)?),
            Formula::And(l, r) => StatePredicate::and(Self::from_formula(l)?, Self::from_formula(r)?),
            Formula::Or(l, r) => StatePredicate::or(Self::from_formula(l)?, Self::from_formula(r)?),
            Formula::Next(_) | Formula::Until(..) | Formula::Release(..) => return None,
        })
    }

    pub fn to_formula(&self) -> Formula {
        match self {
            StatePredicate::True => Formula::True,
            StatePredicate::False => Formula::False,
            StatePredicate::Atom(a) => Formula::Atom(a.clone()),
            StatePredicate::Not(x) => Formula::not(x.to_formula()),
            StatePredicate::And(l, r) => Formula::and(l.to_formula(), r.to_formula()),
            StatePredicate::Or(l, r) => Formula::or(l.to_formula(), r.to_formula()),
        }
    }

    /// Atoms missing from `labels` are false.
    pub fn eval(&self, labels: &LabelSet) -> bool {
        match self {
            StatePredicate::True => true,
            StatePredicate::False => false,
            StatePredicate::Atom(a) => labels.contains(a),
            StatePredicate::Not(x) => !x.eval(labels),
            StatePredicate::And(l, r) => l.eval(labels) && r.eval(labels),
            StatePredicate::Or(l, r) => l.eval(labels) || r.eval(labels),
        }
    }
}

impl fmt::Display for StatePredicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.to_formula().fmt(f)
    }
}
