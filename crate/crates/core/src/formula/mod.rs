//! LTL syntax trees, normal forms and evaluation on lasso-shaped words.
//!
//! The surface language is negation-free LTL over `true`, `false`, atoms,
//! `&`, `|`, `X`, `U` and `R`; `F`, `G` and `W` are expanded by the parser.
//! `Not` exists for negation normal forms and the state predicates used by
//! the measure engine.

mod parse;
mod word;

use std::collections::BTreeSet;
use std::fmt;

pub use parse::{parse, ParseError};
pub use word::{dominates, eval_up_word, UpWord};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    True,
    False,
    Atom(String),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Next(Box<Formula>),
    Until(Box<Formula>, Box<Formula>),
    Release(Box<Formula>, Box<Formula>),
}

impl Formula {
    pub fn atom(name: impl Into<String>) -> Formula {
        Formula::Atom(name.into())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn and(l: Formula, r: Formula) -> Formula {
        Formula::And(Box::new(l), Box::new(r))
    }

    pub fn or(l: Formula, r: Formula) -> Formula {
        Formula::Or(Box::new(l), Box::new(r))
    }

    pub fn next(f: Formula) -> Formula {
        Formula::Next(Box::new(f))
    }

    pub fn until(l: Formula, r: Formula) -> Formula {
        Formula::Until(Box::new(l), Box::new(r))
    }

    pub fn release(l: Formula, r: Formula) -> Formula {
        Formula::Release(Box::new(l), Box::new(r))
    }

    /// `true U f`
    pub fn eventually(f: Formula) -> Formula {
        Formula::until(Formula::True, f)
    }

    /// `false R f`
    pub fn always(f: Formula) -> Formula {
        Formula::release(Formula::False, f)
    }

    /// `(l U r) | G l`
    pub fn weak_until(l: Formula, r: Formula) -> Formula {
        Formula::or(Formula::until(l.clone(), r), Formula::always(l))
    }

    /// Number of nodes in the tree.
    pub fn size(&self) -> usize {
        match self {
            Formula::True | Formula::False | Formula::Atom(_) => 1,
            Formula::Not(f) | Formula::Next(f) => 1 + f.size(),
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Until(l, r) | Formula::Release(l, r) => {
                1 + l.size() + r.size()
            }
        }
    }

    pub fn atoms(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms(&self, out: &mut BTreeSet<String>) {
        match self {
            Formula::True | Formula::False => {}
            Formula::Atom(a) => {
                out.insert(a.clone());
            }
            Formula::Not(f) | Formula::Next(f) => f.collect_atoms(out),
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Until(l, r) | Formula::Release(l, r) => {
                l.collect_atoms(out);
                r.collect_atoms(out);
            }
        }
    }

    /// True iff the formula contains no negation.
    pub fn is_positive(&self) -> bool {
        match self {
            Formula::True | Formula::False | Formula::Atom(_) => true,
            Formula::Not(_) => false,
            Formula::Next(f) => f.is_positive(),
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Until(l, r) | Formula::Release(l, r) => {
                l.is_positive() && r.is_positive()
            }
        }
    }

    /// True iff negation occurs only directly above atoms.
    pub fn is_pnf(&self) -> bool {
        match self {
            Formula::True | Formula::False | Formula::Atom(_) => true,
            Formula::Not(f) => matches!(**f, Formula::Atom(_)),
            Formula::Next(f) => f.is_pnf(),
            Formula::And(l, r) | Formula::Or(l, r) | Formula::Until(l, r) | Formula::Release(l, r) => {
                l.is_pnf() && r.is_pnf()
            }
        }
    }

    /// True iff the formula has no temporal operator.
    pub fn is_propositional(&self) -> bool {
        match self {
            Formula::True | Formula::False | Formula::Atom(_) => true,
            Formula::Not(f) => f.is_propositional(),
            Formula::And(l, r) | Formula::Or(l, r) => l.is_propositional() && r.is_propositional(),
            Formula::Next(_) | Formula::Until(..) | Formula::Release(..) => false,
        }
    }

    /// Pushes every negation down to the atoms.
    pub fn to_pnf(&self) -> Formula {
        match self {
            Formula::True | Formula::False | Formula::Atom(_) => self.clone(),
            Formula::Not(f) => f.negate_to_pnf(),
            Formula::And(l, r) => Formula::and(l.to_pnf(), r.to_pnf()),
            Formula::Or(l, r) => Formula::or(l.to_pnf(), r.to_pnf()),
            Formula::Next(f) => Formula::next(f.to_pnf()),
            Formula::Until(l, r) => Formula::until(l.to_pnf(), r.to_pnf()),
            Formula::Release(l, r) => Formula::release(l.to_pnf(), r.to_pnf()),
        }
    }

    /// A PNF formula equivalent to `!self`.
    pub fn negate_to_pnf(&self) -> Formula {
        match self {
            Formula::True => Formula::False,
            Formula::False => Formula::True,
            Formula::Atom(_) => Formula::not(self.clone()),
            Formula::Not(f) => f.to_pnf(),
            Formula::And(l, r) => Formula::or(l.negate_to_pnf(), r.negate_to_pnf()),
            Formula::Or(l, r) => Formula::and(l.negate_to_pnf(), r.negate_to_pnf()),
            Formula::Next(f) => Formula::next(f.negate_to_pnf()),
            Formula::Until(l, r) => Formula::release(l.negate_to_pnf(), r.negate_to_pnf()),
            Formula::Release(l, r) => Formula::until(l.negate_to_pnf(), r.negate_to_pnf()),
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Formula::Or(..) => 1,
            Formula::And(..) => 2,
            Formula::Until(l, _) if **l == Formula::True => 4,
            Formula::Release(l, _) if **l == Formula::False => 4,
            Formula::Until(..) | Formula::Release(..) => 3,
            Formula::Not(_) | Formula::Next(_) => 4,
            Formula::True | Formula::False | Formula::Atom(_) => 5,
        }
    }

    fn fmt_at(&self, f: &mut fmt::Formatter<'_>, min: u8) -> fmt::Result {
        if self.precedence() < min {
            write!(f, "(")?;
            self.fmt_at(f, 0)?;
            return write!(f, ")");
        }
        match self {
            Formula::True => write!(f, "true"),
            Formula::False => write!(f, "false"),
            Formula::Atom(a) => write!(f, "{a}"),
            Formula::Not(x) => {
                write!(f, "!")?;
                x.fmt_at(f, 4)
            }
            Formula::Next(x) => {
                write!(f, "X ")?;
                x.fmt_at(f, 4)
            }
            Formula::Until(l, r) if **l == Formula::True => {
                write!(f, "F ")?;
                r.fmt_at(f, 4)
            }
            Formula::Release(l, r) if **l == Formula::False => {
                write!(f, "G ")?;
                r.fmt_at(f, 4)
            }
            Formula::Or(l, r) => binary(f, l, " | ", r, 1, 2),
            Formula::And(l, r) => binary(f, l, " & ", r, 2, 3),
            Formula::Until(l, r) => binary(f, l, " U ", r, 4, 3),
            Formula::Release(l, r) => binary(f, l, " R ", r, 4, 3),
        }
    }
}

fn binary(f: &mut fmt::Formatter<'_>, l: &Formula, op: &str, r: &Formula, lmin: u8, rmin: u8) -> fmt::Result {
    l.fmt_at(f, lmin)?;
    write!(f, "{op}")?;
    r.fmt_at(f, rmin)
}

/// Prints in the parser's grammar with minimal parentheses.
impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_at(f, 0)
    }
}

impl std::str::FromStr for Formula {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse(s)
    }
}
