use std::collections::HashMap;

use num_bigint::{BigInt, BigUint, RandBigInt};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::formula::{eval_up_word, Formula, UpWord};
use crate::measure::Chain;
use crate::pts::LabelSet;
use crate::rational::Rational;

/// Name of the pseudo-random generator behind [`interval_estimate`].
pub const GENERATOR: &str = "ChaCha8";

/// Sampled bracket on the measure of a positive formula.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntervalEstimate {
    pub n_samples: usize,
    pub n_definitely_sat: usize,
    pub n_definitely_unsat: usize,
    pub n_unknown: usize,
    pub lo: Rational,
    pub hi: Rational,
    pub slack: Rational,
    pub confidence_delta: Rational,
    pub seed: u64,
}

/// Exact probabilities of the three sample classes at a horizon.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactBracket {
    pub definitely_sat: Rational,
    pub definitely_unsat: Rational,
}

impl ExactBracket {
    pub fn lo(&self) -> Rational {
        self.definitely_sat.clone()
    }

    pub fn hi(&self) -> Rational {
        Rational::one() - &self.definitely_unsat
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Class {
    Sat,
    Unsat,
    Unknown,
}

/// Classifies finite label prefixes: satisfied whatever follows (checked
/// with the empty suffix) or violated whatever follows (checked with the
/// suffix carrying every atom of the formula).
struct Classifier<'f> {
    formula: &'f Formula,
    atoms: Vec<String>,
    cache: HashMap<Vec<u32>, Class>,
}

impl<'f> Classifier<'f> {
    fn new(formula: &'f Formula) -> Self {
        Classifier { formula, atoms: formula.atoms().into_iter().collect(), cache: HashMap::new() }
    }

    fn letter(&self, labels: &LabelSet) -> u32 {
        self.atoms.iter().enumerate().filter(|(_, a)| labels.contains(a.as_str())).fold(0, |m, (i, _)| m | 1 << i)
    }

    fn classify(&mut self, prefix: Vec<u32>) -> Class {
        if let Some(&c) = self.cache.get(&prefix) {
            return c;
        }
        let sets: Vec<LabelSet> = prefix
            .iter()
            .map(|&m| self.atoms.iter().enumerate().filter(|(i, _)| m >> i & 1 == 1).map(|(_, a)| a.clone()).collect())
            .collect();
        let all: LabelSet = self.atoms.iter().cloned().collect();
        let low = UpWord::new(sets.clone(), vec![LabelSet::new()]).expect("cycle is nonempty");
        let high = UpWord::new(sets, vec![all]).expect("cycle is nonempty");
        let class = if eval_up_word(&low, self.formula) {
            Class::Sat
        } else if !eval_up_word(&high, self.formula) {
            Class::Unsat
        } else {
            Class::Unknown
        };
        self.cache.insert(prefix, class);
        class
    }
}

fn check_args(formula: &Formula, horizon: usize) -> Result<()> {
    if !formula.is_positive() {
        return Err(Error::NotPositive(formula.to_string()));
    }
    if horizon == 0 {
        return Err(Error::InvalidArgument("horizon must be at least 1".into()));
    }
    if formula.atoms().len() > 32 {
        return Err(Error::InvalidArgument("formula mentions more than 32 atoms".into()));
    }
    Ok(())
}

/// Cumulative integer weights over a common denominator for exact sampling.
struct Distribution {
    cumulative: Vec<BigUint>,
    total: BigUint,
    outcomes: Vec<usize>,
}

impl Distribution {
    fn new(entries: impl Iterator<Item = (usize, Rational)>) -> Self {
        let entries: Vec<(usize, Rational)> = entries.filter(|(_, p)| !p.is_zero()).collect();
        let denom = entries.iter().fold(BigInt::one(), |l, (_, p)| l.lcm(p.denom()));
        let mut acc = BigInt::zero();
        let mut cumulative = Vec::with_capacity(entries.len());
        let mut outcomes = Vec::with_capacity(entries.len());
        for (s, p) in &entries {
            acc += p.numer() * (&denom / p.denom());
            cumulative.push(acc.to_biguint().expect("probabilities are positive"));
            outcomes.push(*s);
        }
        Distribution { cumulative, total: denom.to_biguint().expect("denominators are positive"), outcomes }
    }

    fn sample(&self, rng: &mut ChaCha8Rng) -> usize {
        let x = rng.gen_biguint_below(&self.total);
        let i = self.cumulative.partition_point(|c| *c <= x);
        self.outcomes[i]
    }
}

/// Samples `n` paths of `horizon` states and brackets the measure of
/// `formula` with a two-sided Hoeffding interval at confidence `1 - delta`.
pub fn interval_estimate(
    chain: &Chain,
    formula: &Formula,
    n: usize,
    horizon: usize,
    seed: u64,
    delta: &Rational,
) -> Result<IntervalEstimate> {
    check_args(formula, horizon)?;
    if n == 0 {
        return Err(Error::InvalidArgument("at least one sample is required".into()));
    }
    if *delta <= Rational::zero() || *delta >= Rational::one() {
        return Err(Error::InvalidArgument(format!("delta must lie strictly between 0 and 1, got {delta}")));
    }
    let init = Distribution::new(chain.init().iter().cloned().enumerate());
    let rows: Vec<Distribution> = (0..chain.len()).map(|s| Distribution::new(chain.row(s).iter().cloned())).collect();
    let mut classifier = Classifier::new(formula);
    let letters: Vec<u32> = chain.states().iter().map(|s| classifier.letter(&s.labels)).collect();

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut sat, mut unsat) = (0, 0);
    for _ in 0..n {
        let mut state = init.sample(&mut rng);
        let mut prefix = Vec::with_capacity(horizon);
        prefix.push(letters[state]);
        for _ in 1..horizon {
            state = rows[state].sample(&mut rng);
            prefix.push(letters[state]);
        }
        match classifier.classify(prefix) {
            Class::Sat => sat += 1,
            Class::Unsat => unsat += 1,
            Class::Unknown => {}
        }
    }

    let slack = hoeffding_slack(n, delta);
    let count = |k: usize| Rational::new(BigInt::from(k), BigInt::from(n));
    let clamp = |x: Rational| x.max(Rational::zero()).min(Rational::one());
    Ok(IntervalEstimate {
        n_samples: n,
        n_definitely_sat: sat,
        n_definitely_unsat: unsat,
        n_unknown: n - sat - unsat,
        lo: clamp(count(sat) - &slack),
        hi: clamp(Rational::one() - count(unsat) + &slack),
        slack,
        confidence_delta: delta.clone(),
        seed,
    })
}

/// `sqrt(ln(2/delta) / (2n))`, rounded up to a multiple of 10^-9 with one
/// extra unit to absorb floating-point error.
pub fn hoeffding_slack(n: usize, delta: &Rational) -> Rational {
    let d = delta.to_f64().expect("delta is a finite rational");
    let x = ((2.0 / d).ln() / (2.0 * n as f64)).sqrt();
    let scale = 1_000_000_000i64;
    let units = (x * scale as f64).ceil() as i64 + 1;
    Rational::new(BigInt::from(units), BigInt::from(scale))
}

/// The exact probabilities of definitely-satisfying and definitely-violating
/// prefixes of `horizon` states, by enumerating every path.
pub fn exact_bracket(chain: &Chain, formula: &Formula, horizon: usize) -> Result<ExactBracket> {
    check_args(formula, horizon)?;
    let mut classifier = Classifier::new(formula);
    let letters: Vec<u32> = chain.states().iter().map(|s| classifier.letter(&s.labels)).collect();
    let mut sat = Rational::zero();
    let mut unsat = Rational::zero();
    // (state, prefix letters, probability)
    let mut stack: Vec<(usize, Vec<u32>, Rational)> = chain
        .init()
        .iter()
        .enumerate()
        .filter(|(_, p)| !p.is_zero())
        .map(|(s, p)| (s, vec![letters[s]], p.clone()))
        .collect();
    while let Some((s, prefix, p)) = stack.pop() {
        if prefix.len() == horizon {
            match classifier.classify(prefix) {
                Class::Sat => sat += p,
                Class::Unsat => unsat += p,
                Class::Unknown => {}
            }
            continue;
        }
        for (t, q) in chain.row(s) {
            let mut next = prefix.clone();
            next.push(letters[*t]);
            stack.push((*t, next, &p * q));
        }
    }
    Ok(ExactBracket { definitely_sat: sat, definitely_unsat: unsat })
}
