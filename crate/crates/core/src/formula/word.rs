use std::fmt;

use super::Formula;
use crate::error::{Error, Result};
use crate::pts::LabelSet;

/// An ultimately periodic word `prefix · cycle^ω`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UpWord {
    prefix: Vec<LabelSet>,
    cycle: Vec<LabelSet>,
}

impl UpWord {
    pub fn new(prefix: Vec<LabelSet>, cycle: Vec<LabelSet>) -> Result<Self> {
        if cycle.is_empty() {
            return Err(Error::InvalidArgument("the cycle of a lasso word must be nonempty".into()));
        }
        Ok(UpWord { prefix, cycle })
    }

    pub fn prefix(&self) -> &[LabelSet] {
        &self.prefix
    }

    pub fn cycle(&self) -> &[LabelSet] {
        &self.cycle
    }

    /// Number of distinct positions, `|prefix| + |cycle|`.
    pub fn positions(&self) -> usize {
        self.prefix.len() + self.cycle.len()
    }

    pub fn at(&self, pos: usize) -> &LabelSet {
        if pos < self.prefix.len() {
            &self.prefix[pos]
        } else {
            &self.cycle[(pos - self.prefix.len()) % self.cycle.len()]
        }
    }

    /// Successor of a position, folding the end of the cycle back to its start.
    pub fn succ(&self, pos: usize) -> usize {
        if pos + 1 < self.positions() {
            pos + 1
        } else {
            self.prefix.len()
        }
    }
}

impl fmt::Display for UpWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let set = |l: &LabelSet| format!("{{{}}}", l.iter().cloned().collect::<Vec<_>>().join(","));
        for l in &self.prefix {
            write!(f, "{}", set(l))?;
        }
        write!(f, "(")?;
        for l in &self.cycle {
            write!(f, "{}", set(l))?;
        }
        write!(f, ")^ω")
    }
}

/// Whether `word ⊨ formula` under the standard LTL semantics.
pub fn eval_up_word(word: &UpWord, formula: &Formula) -> bool {
    truth(word, formula)[0]
}

/// Truth value of `formula` at each position of `word`.
pub(crate) fn truth(word: &UpWord, formula: &Formula) -> Vec<bool> {
    let n = word.positions();
    match formula {
        Formula::True => vec![true; n],
        Formula::False => vec![false; n],
        Formula::Atom(a) => (0..n).map(|p| word.at(p).contains(a)).collect(),
        Formula::Not(f) => truth(word, f).into_iter().map(|v| !v).collect(),
        Formula::And(l, r) => zip(truth(word, l), truth(word, r), |x, y| x && y),
        Formula::Or(l, r) => zip(truth(word, l), truth(word, r), |x, y| x || y),
        Formula::Next(f) => {
            let inner = truth(word, f);
            (0..n).map(|p| inner[word.succ(p)]).collect()
        }
        Formula::Until(l, r) => {
            let (hold, goal) = (truth(word, l), truth(word, r));
            fixpoint(word, vec![false; n], |p, next| goal[p] || (hold[p] && next))
        }
        Formula::Release(l, r) => {
            let (stop, keep) = (truth(word, l), truth(word, r));
            fixpoint(word, vec![true; n], |p, next| keep[p] && (stop[p] || next))
        }
    }
}

fn zip(a: Vec<bool>, b: Vec<bool>, op: impl Fn(bool, bool) -> bool) -> Vec<bool> {
    a.into_iter().zip(b).map(|(x, y)| op(x, y)).collect()
}

// Backward passes until stable; monotone in `values`, so starting from all
// false gives the least fixpoint and from all true the greatest.
fn fixpoint(word: &UpWord, mut values: Vec<bool>, step: impl Fn(usize, bool) -> bool) -> Vec<bool> {
    loop {
        let mut changed = false;
        for p in (0..values.len()).rev() {
            let v = step(p, values[word.succ(p)]);
            if v != values[p] {
                values[p] = v;
                changed = true;
            }
        }
        if !changed {
            return values;
        }
    }
}

/// Position-wise label inclusion of two words of the same shape.
pub fn dominates(lower: &UpWord, upper: &UpWord) -> Result<bool> {
    if lower.prefix.len() != upper.prefix.len() || lower.cycle.len() != upper.cycle.len() {
        return Err(Error::ShapeMismatch(
            format!("{}+{}", lower.prefix.len(), lower.cycle.len()),
            format!("{}+{}", upper.prefix.len(), upper.cycle.len()),
        ));
    }
    Ok((0..lower.positions()).all(|p| lower.at(p).is_subset(upper.at(p))))
}
