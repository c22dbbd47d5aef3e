//! Exact sparse Gaussian elimination for fixpoint systems
//! `x_i = Σ_j a_ij · x_j + b_i` with nonnegative coefficients.
//!
//! Variables are eliminated one at a time, cheapest first by the product of
//! their in- and out-degree, which keeps fill-in low on the locally
//! connected graphs produced by partial exploration. The caller guarantees
//! that `I − A` is nonsingular.

use std::collections::{BTreeMap, BTreeSet};
use std::mem;

use num_traits::{One, Zero};

use crate::rational::Rational;

pub(crate) struct FixpointSystem {
    rows: Vec<BTreeMap<usize, Rational>>,
    rhs: Vec<Rational>,
}

impl FixpointSystem {
    pub(crate) fn new(size: usize) -> Self {
        FixpointSystem { rows: vec![BTreeMap::new(); size], rhs: vec![Rational::zero(); size] }
    }

    pub(crate) fn add_coef(&mut self, row: usize, col: usize, value: &Rational) {
        *self.rows[row].entry(col).or_insert_with(Rational::zero) += value;
    }

    pub(crate) fn add_rhs(&mut self, row: usize, value: &Rational) {
        self.rhs[row] += value;
    }

    pub(crate) fn solve(self) -> Vec<Rational> {
        let FixpointSystem { mut rows, mut rhs } = self;
        let n = rows.len();
        let mut preds: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
        for (i, row) in rows.iter().enumerate() {
            for &j in row.keys() {
                if j != i {
                    preds[j].insert(i);
                }
            }
        }
        let cost =
            |rows: &[BTreeMap<usize, Rational>], preds: &[BTreeSet<usize>], i: usize| preds[i].len() * rows[i].len();
        let mut costs: Vec<usize> = (0..n).map(|i| cost(&rows, &preds, i)).collect();
        let mut queue: BTreeSet<(usize, usize)> = (0..n).map(|i| (costs[i], i)).collect();
        let mut order = Vec::with_capacity(n);

        while let Some((_, k)) = queue.pop_first() {
            if let Some(self_loop) = rows[k].remove(&k) {
                let denom = Rational::one() - self_loop;
                assert!(!denom.is_zero(), "singular fixpoint system: variable {k} is a closed loop");
                let scale = denom.recip();
                for v in rows[k].values_mut() {
                    *v *= &scale;
                }
                rhs[k] *= &scale;
            }
            order.push(k);

            let pivot = mem::take(&mut rows[k]);
            for &j in pivot.keys() {
                preds[j].remove(&k);
            }
            let users = mem::take(&mut preds[k]);
            let mut touched: BTreeSet<usize> = pivot.keys().copied().collect();
            for &i in &users {
                let factor = rows[i].remove(&k).expect("predecessor lists are in sync with rows");
                for (&j, a) in &pivot {
                    let delta = &factor * a;
                    match rows[i].get_mut(&j) {
                        Some(v) => *v += delta,
                        None => {
                            rows[i].insert(j, delta);
                            if j != i {
                                preds[j].insert(i);
                            }
                        }
                    }
                }
                let add = &factor * &rhs[k];
                rhs[i] += add;
                touched.insert(i);
            }
            rows[k] = pivot;
            for i in touched {
                if queue.remove(&(costs[i], i)) {
                    costs[i] = cost(&rows, &preds, i);
                    queue.insert((costs[i], i));
                }
            }
        }

        // Each pivot row only refers to variables eliminated after it.
        let mut x = vec![Rational::zero(); n];
        for &k in order.iter().rev() {
            let mut value = mem::take(&mut rhs[k]);
            for (j, a) in &rows[k] {
                value += a * &x[*j];
            }
            x[k] = value;
        }
        x
    }
}
