//! Explicit Büchi automata over letters drawn from a fixed list of atoms,
//! with membership of lasso words and products against labeled graphs.

use std::collections::HashMap;

use super::lasso::{find_accepting_lasso, Lasso};
use crate::formula::UpWord;
use crate::pts::LabelSet;

/// Path through a product, as `(node, state)` pairs.
pub(crate) type ProductPath = Vec<(usize, usize)>;

/// Shared representation of generalized and plain Büchi automata.
///
/// Each state reads exactly one letter: the subset of `atoms` that holds at
/// the current position. Letters are bitmasks over `atoms`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Automaton {
    pub atoms: Vec<String>,
    pub letters: Vec<u32>,
    pub succ: Vec<Vec<usize>>,
    pub initial: Vec<usize>,
    pub acceptance: Vec<Vec<bool>>,
}

impl Automaton {
    pub fn len(&self) -> usize {
        self.letters.len()
    }

    /// Bitmask of the atoms in `labels`; other labels are ignored.
    pub fn project(&self, labels: &LabelSet) -> u32 {
        self.atoms.iter().enumerate().filter(|(_, a)| labels.contains(a.as_str())).fold(0, |m, (i, _)| m | 1 << i)
    }

    pub fn letter_set(&self, state: usize) -> LabelSet {
        let bits = self.letters[state];
        self.atoms.iter().enumerate().filter(|(i, _)| bits >> i & 1 == 1).map(|(_, a)| a.clone()).collect()
    }

    /// Whether the automaton accepts `word`.
    pub fn accepts(&self, word: &UpWord) -> bool {
        let letters: Vec<u32> = (0..word.positions()).map(|p| self.project(word.at(p))).collect();
        if self.len() <= 64 {
            self.accepts_small(word, &letters)
        } else {
            let succ: Vec<usize> = (0..word.positions()).map(|p| word.succ(p)).collect();
            self.product(&[0], |p| letters[p], |p| std::slice::from_ref(&succ[p])).is_some()
        }
    }

    // Emerson-Lei fixpoint on the product with the word, one u64 per position.
    fn accepts_small(&self, word: &UpWord, letters: &[u32]) -> bool {
        let n = self.len();
        let positions = letters.len();
        let next: Vec<usize> = (0..positions).map(|p| word.succ(p)).collect();
        let mut succ_mask = vec![0u64; n];
        for (q, ts) in self.succ.iter().enumerate() {
            for &t in ts {
                succ_mask[q] |= 1 << t;
            }
        }
        let matching: Vec<u64> =
            letters.iter().map(|&l| (0..n).filter(|&q| self.letters[q] == l).fold(0, |m, q| m | 1 << q)).collect();
        let post = |set: u64| (0..n).filter(|&q| set >> q & 1 == 1).fold(0u64, |m, q| m | succ_mask[q]);
        let pre = |p: usize, target: u64| {
            (0..n).filter(|&q| matching[p] >> q & 1 == 1 && succ_mask[q] & target != 0).fold(0u64, |m, q| m | 1 << q)
        };

        let init = self.initial.iter().fold(0u64, |m, &q| m | 1 << q);
        let mut zone = vec![0u64; positions];
        zone[0] = init & matching[0];
        let mut changed = true;
        while changed {
            changed = false;
            for p in 0..positions {
                let add = post(zone[p]) & matching[next[p]] & !zone[next[p]];
                if add != 0 {
                    zone[next[p]] |= add;
                    changed = true;
                }
            }
        }

        let sets: Vec<u64> = if self.acceptance.is_empty() {
            vec![u64::MAX]
        } else {
            self.acceptance.iter().map(|f| (0..n).filter(|&q| f[q]).fold(0, |m, q| m | 1 << q)).collect()
        };
        loop {
            let mut narrowed = zone.clone();
            for &f in &sets {
                // nodes of the zone with a nonempty path inside it to an f-node
                let mut reach = vec![0u64; positions];
                let mut changed = true;
                while changed {
                    changed = false;
                    for p in 0..positions {
                        let target = (zone[next[p]] & f) | reach[next[p]];
                        let add = pre(p, target) & zone[p] & !reach[p];
                        if add != 0 {
                            reach[p] |= add;
                            changed = true;
                        }
                    }
                }
                for p in 0..positions {
                    narrowed[p] &= reach[p];
                }
            }
            if narrowed == zone {
                return zone.iter().any(|&z| z != 0);
            }
            zone = narrowed;
        }
    }

    /// Searches the product with a graph whose nodes carry letters for an
    /// accepting lasso, returned as pairs `(node, state)`.
    pub fn product<'g>(
        &self,
        roots: &[usize],
        letter: impl Fn(usize) -> u32,
        succ: impl Fn(usize) -> &'g [usize],
    ) -> Option<(ProductPath, ProductPath)> {
        let mut index: HashMap<(usize, usize), usize> = HashMap::new();
        let mut nodes: Vec<(usize, usize)> = Vec::new();
        let mut edges: Vec<Vec<usize>> = Vec::new();
        let mut init = Vec::new();
        let mut intern = |pair: (usize, usize), nodes: &mut Vec<(usize, usize)>, edges: &mut Vec<Vec<usize>>| {
            *index.entry(pair).or_insert_with(|| {
                nodes.push(pair);
                edges.push(Vec::new());
                nodes.len() - 1
            })
        };
        for &v in roots {
            let l = letter(v);
            for &q in &self.initial {
                if self.letters[q] == l {
                    init.push(intern((v, q), &mut nodes, &mut edges));
                }
            }
        }
        let mut done = 0;
        while done < nodes.len() {
            let (v, q) = nodes[done];
            let mut out = Vec::new();
            for &w in succ(v) {
                let l = letter(w);
                for &r in &self.succ[q] {
                    if self.letters[r] == l {
                        out.push(intern((w, r), &mut nodes, &mut edges));
                    }
                }
            }
            out.sort_unstable();
            out.dedup();
            edges[done] = out;
            done += 1;
        }
        let acceptance: Vec<Vec<bool>> =
            self.acceptance.iter().map(|f| nodes.iter().map(|&(_, q)| f[q]).collect()).collect();
        let Lasso { prefix, cycle } = find_accepting_lasso(&edges, &init, &acceptance)?;
        let pairs = |xs: Vec<usize>| xs.into_iter().map(|i| nodes[i]).collect();
        Some((pairs(prefix), pairs(cycle)))
    }
}
