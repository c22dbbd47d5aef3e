//! Degeneralization to a single acceptance set.

use super::automaton::Automaton;
use super::gnba::Gnba;
use crate::formula::UpWord;
use crate::pts::LabelSet;

/// A Büchi automaton with one acceptance set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Nba {
    pub(crate) aut: Automaton,
}

impl Nba {
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

    pub fn letter(&self, state: usize) -> LabelSet {
        self.aut.letter_set(state)
    }

    pub fn is_accepting(&self, state: usize) -> bool {
        self.aut.acceptance[0][state]
    }

    pub fn accepts(&self, word: &UpWord) -> bool {
        self.aut.accepts(word)
    }
}

impl From<&Gnba> for Nba {
    /// Counter construction: copy `i` waits for the `i`-th acceptance set
    /// and hands over to copy `i + 1` once it is visited. Without
    /// acceptance sets every state is accepting.
    fn from(gnba: &Gnba) -> Nba {
        let g = &gnba.aut;
        let n = g.len();
        let k = g.acceptance.len();
        if k == 0 {
            let mut aut = g.clone();
            aut.acceptance = vec![vec![true; n]];
            return Nba { aut };
        }
        let id = |q: usize, copy: usize| copy * n + q;
        let mut letters = Vec::with_capacity(n * k);
        let mut succ = Vec::with_capacity(n * k);
        let mut accepting = Vec::with_capacity(n * k);
        for copy in 0..k {
            for q in 0..n {
                let next = if g.acceptance[copy][q] { (copy + 1) % k } else { copy };
                letters.push(g.letters[q]);
                succ.push(g.succ[q].iter().map(|&t| id(t, next)).collect());
                accepting.push(copy == 0 && g.acceptance[0][q]);
            }
        }
        let initial = g.initial.iter().map(|&q| id(q, 0)).collect();
        Nba { aut: Automaton { atoms: g.atoms.clone(), letters, succ, initial, acceptance: vec![accepting] } }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse;
    use crate::qualitative::gnba_of;

    #[test]
    fn single_set_for_two_untils() {
        let g = gnba_of(&parse("G F a & G F b").unwrap().to_pnf()).unwrap();
        let n = Nba::from(&g);
        assert_eq!(g.acceptance_sets().len(), 2);
        assert_eq!(n.len(), 2 * g.len());
        assert!((0..n.len()).any(|q| n.is_accepting(q)));
    }

    #[test]
    fn no_untils_means_all_accepting() {
        let g = gnba_of(&parse("G a").unwrap()).unwrap();
        let n = Nba::from(&g);
        assert_eq!(n.len(), g.len());
        assert!((0..n.len()).all(|q| n.is_accepting(q)));
    }
}
