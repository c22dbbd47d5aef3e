//! Tableau construction of generalized Büchi automata from PNF formulas.
//!
//! A tableau state fixes the letter (the formula's atoms that hold now) and
//! a truth value for every `X`, `U` and `R` subformula; the values of the
//! remaining subformulas follow. States are kept only when the guesses are
//! locally consistent with the expansion laws
//! `ψ U χ ≡ χ ∨ (ψ ∧ X(ψ U χ))` and `ψ R χ ≡ χ ∧ (ψ ∨ X(ψ R χ))`, and
//! transitions enforce the `X` parts. Each `U` contributes the acceptance
//! set of states where it is false or already fulfilled.

use std::collections::HashMap;

use super::automaton::Automaton;
use crate::error::{Error, Result};
use crate::formula::{Formula, UpWord};
use crate::pts::LabelSet;

const MAX_ATOMS: usize = 16;
const MAX_GUESS_BITS: usize = 20;
const MAX_NODES: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
enum Node {
    True,
    False,
    Atom(usize),
    NotAtom(usize),
    And(usize, usize),
    Or(usize, usize),
    Next(usize),
    Until(usize, usize),
    Release(usize, usize),
}

struct Closure {
    atoms: Vec<String>,
    nodes: Vec<Node>,
    index: HashMap<Formula, usize>,
}

impl Closure {
    fn add(&mut self, f: &Formula) -> usize {
        if let Some(&i) = self.index.get(f) {
            return i;
        }
        let atom = |atoms: &mut Vec<String>, a: &String| match atoms.iter().position(|x| x == a) {
            Some(i) => i,
            None => {
                atoms.push(a.clone());
                atoms.len() - 1
            }
        };
        let node = match f {
            Formula::True => Node::True,
            Formula::False => Node::False,
            Formula::Atom(a) => Node::Atom(atom(&mut self.atoms, a)),
            Formula::Not(x) => match &**x {
                Formula::Atom(a) => Node::NotAtom(atom(&mut self.atoms, a)),
                _ => unreachable!("input is in positive normal form"),
            },
            Formula::And(l, r) => Node::And(self.add(l), self.add(r)),
            Formula::Or(l, r) => Node::Or(self.add(l), self.add(r)),
            Formula::Next(x) => Node::Next(self.add(x)),
            Formula::Until(l, r) => Node::Until(self.add(l), self.add(r)),
            Formula::Release(l, r) => Node::Release(self.add(l), self.add(r)),
        };
        self.nodes.push(node);
        self.index.insert(f.clone(), self.nodes.len() - 1);
        self.nodes.len() - 1
    }
}

/// A generalized Büchi automaton with one acceptance set per `U` subformula.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gnba {
    pub(crate) aut: Automaton,
}

impl Gnba {
    /// The atoms the automaton reads; letters are subsets of these.
    pub fn atoms(&self) -> &[String] {
        &self.aut.atoms
    }

    pub fn len(&self) -> usize {
        self.aut.len()
    }

    pub fn is_empty(&self) -> bool {
        self.aut.len() == 0
    }

    pub fn initial(&self) -> &[usize] {
        &self.aut.initial
    }

    pub fn successors(&self, state: usize) -> &[usize] {
        &self.aut.succ[state]
    }

    /// The letter a state reads.
    pub fn letter(&self, state: usize) -> LabelSet {
        self.aut.letter_set(state)
    }

    pub fn acceptance_sets(&self) -> &[Vec<bool>] {
        &self.aut.acceptance
    }

    pub fn accepts(&self, word: &UpWord) -> bool {
        self.aut.accepts(word)
    }
}

/// Builds the tableau automaton of a PNF formula.
pub fn gnba_of(formula: &Formula) -> Result<Gnba> {
    if !formula.is_pnf() {
        return Err(Error::NotPnf(formula.to_string()));
    }
    let mut closure = Closure { atoms: Vec::new(), nodes: Vec::new(), index: HashMap::new() };
    let root = closure.add(formula);
    let Closure { atoms, nodes, .. } = closure;
    let temporal: Vec<usize> =
        (0..nodes.len()).filter(|&i| matches!(nodes[i], Node::Next(_) | Node::Until(..) | Node::Release(..))).collect();
    let too_large = atoms.len() > MAX_ATOMS || atoms.len() + temporal.len() > MAX_GUESS_BITS || nodes.len() > MAX_NODES;
    if too_large {
        return Err(Error::InvalidArgument(format!("formula `{formula}` is too large for the tableau construction")));
    }

    // truth values of all closure nodes, one bit per node
    let mut values: Vec<u64> = Vec::new();
    let mut letters: Vec<u32> = Vec::new();
    for letter in 0u32..1 << atoms.len() {
        'guess: for guess in 0u64..1 << temporal.len() {
            let mut v = 0u64;
            let mut g = 0;
            let bit = |v: u64, i: usize| v >> i & 1 == 1;
            for (i, node) in nodes.iter().enumerate() {
                let value = match *node {
                    Node::True => true,
                    Node::False => false,
                    Node::Atom(a) => letter >> a & 1 == 1,
                    Node::NotAtom(a) => letter >> a & 1 == 0,
                    Node::And(l, r) => bit(v, l) && bit(v, r),
                    Node::Or(l, r) => bit(v, l) || bit(v, r),
                    Node::Next(_) | Node::Until(..) | Node::Release(..) => {
                        let b = guess >> g & 1 == 1;
                        g += 1;
                        b
                    }
                };
                let consistent = match *node {
                    Node::Until(l, r) => (!value || bit(v, l) || bit(v, r)) && (!bit(v, r) || value),
                    Node::Release(l, r) => (!value || bit(v, r)) && (!(bit(v, l) && bit(v, r)) || value),
                    _ => true,
                };
                if !consistent {
                    continue 'guess;
                }
                v |= (value as u64) << i;
            }
            values.push(v);
            letters.push(letter);
        }
    }

    let bit = |v: u64, i: usize| v >> i & 1 == 1;
    let mut cache: HashMap<(u64, u64), Vec<usize>> = HashMap::new();
    let succ = values
        .iter()
        .map(|&v| {
            let (mut mask, mut want) = (0u64, 0u64);
            for (i, node) in nodes.iter().enumerate() {
                let required = match *node {
                    Node::Next(x) => Some((x, bit(v, i))),
                    Node::Until(l, r) if bit(v, l) && !bit(v, r) => Some((i, bit(v, i))),
                    Node::Release(l, r) if !bit(v, l) && bit(v, r) => Some((i, bit(v, i))),
                    _ => None,
                };
                if let Some((j, b)) = required {
                    if mask >> j & 1 == 1 && (want >> j & 1 == 1) != b {
                        return Vec::new();
                    }
                    mask |= 1 << j;
                    want |= (b as u64) << j;
                }
            }
            cache
                .entry((mask, want))
                .or_insert_with(|| (0..values.len()).filter(|&t| values[t] & mask == want).collect())
                .clone()
        })
        .collect();

    let initial = (0..values.len()).filter(|&q| bit(values[q], root)).collect();
    let acceptance = nodes
        .iter()
        .enumerate()
        .filter_map(|(i, node)| match *node {
            Node::Until(_, r) => Some(values.iter().map(|&v| !bit(v, i) || bit(v, r)).collect()),
            _ => None,
        })
        .collect();
    Ok(Gnba { aut: Automaton { atoms, letters, succ, initial, acceptance } })
}
