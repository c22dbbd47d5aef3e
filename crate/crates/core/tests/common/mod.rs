//! Shared fixtures and independent oracles for the integration tests.
#![allow(dead_code)]

use lprog::measure::Chain;
use lprog::{parse_rational, Formula, LabelSet, Pts, Rational, UpWord};
use num_traits::{One, Zero};
use rand::Rng;

pub fn q(s: &str) -> Rational {
    parse_rational(s).unwrap()
}

pub fn labels(xs: &[&str]) -> LabelSet {
    xs.iter().map(|s| s.to_string()).collect()
}

pub fn triad() -> Pts {
    let mut m = Pts::new(["a", "b"], "s0");
    m.add_state("s0", ["a"]).unwrap();
    m.add_state("s1", ["a", "b"]).unwrap();
    m.add_state("s2", ["a", "b"]).unwrap();
    m.add_state("s3", ["a"]).unwrap();
    for (id, s, t, p) in [
        ("t01", "s0", "s1", "1/2"),
        ("t02", "s0", "s2", "1/2"),
        ("t10", "s1", "s0", "1/2"),
        ("t13", "s1", "s3", "1/2"),
        ("t22", "s2", "s2", "1"),
        ("t33", "s3", "s3", "1"),
    ] {
        m.add_transition(id, s, t, q(p)).unwrap();
    }
    m
}

/// `s0{a}` loops with probability 1/2 and otherwise moves to the unlabeled `s1`.
pub fn half_loop() -> Pts {
    let mut m = Pts::new(["a"], "s0");
    m.add_state("s0", ["a"]).unwrap();
    m.add_state("s1", Vec::<String>::new()).unwrap();
    m.add_transition("t00", "s0", "s0", q("1/2")).unwrap();
    m.add_transition("t01", "s0", "s1", q("1/2")).unwrap();
    m.add_transition("t11", "s1", "s1", q("1")).unwrap();
    m
}

/// `s0{} → s1{a}` followed by a self-loop.
pub fn line() -> Pts {
    let mut m = Pts::new(["a"], "s0");
    m.add_state("s0", Vec::<String>::new()).unwrap();
    m.add_state("s1", ["a"]).unwrap();
    m.add_transition("t01", "s0", "s1", q("1")).unwrap();
    m.add_transition("t11", "s1", "s1", q("1")).unwrap();
    m
}

pub fn search(ids: &[&str]) -> lprog::Search {
    ids.iter().copied().collect()
}

/// The six searches of the progress table for the triad.
pub fn table_searches() -> Vec<Vec<&'static str>> {
    vec![
        vec![],
        vec!["t01"],
        vec!["t02"],
        vec!["t01", "t02"],
        vec!["t01", "t13", "t33"],
        vec!["t01", "t10", "t13", "t33"],
    ]
}

/// Random propositional formula over `atoms`, with negation only on atoms.
pub fn random_prop(rng: &mut impl Rng, atoms: &[&str], depth: usize) -> Formula {
    if depth == 0 || rng.gen_bool(0.35) {
        return match rng.gen_range(0..10) {
            0 => Formula::True,
            1 => Formula::False,
            k => {
                let a = Formula::atom(atoms[rng.gen_range(0..atoms.len())]);
                if k % 2 == 0 {
                    Formula::not(a)
                } else {
                    a
                }
            }
        };
    }
    let l = random_prop(rng, atoms, depth - 1);
    let r = random_prop(rng, atoms, depth - 1);
    if rng.gen_bool(0.5) {
        Formula::and(l, r)
    } else {
        Formula::or(l, r)
    }
}

/// Truth of a propositional formula on a label set, written independently
/// of the library's predicates.
pub fn holds(f: &Formula, l: &LabelSet) -> bool {
    match f {
        Formula::True => true,
        Formula::False => false,
        Formula::Atom(a) => l.contains(a),
        Formula::Not(x) => !holds(x, l),
        Formula::And(x, y) => holds(x, l) && holds(y, l),
        Formula::Or(x, y) => holds(x, l) || holds(y, l),
        _ => panic!("not propositional: {f}"),
    }
}

/// Probability, from the initial distribution, of eventually reaching a
/// `goal` state, by dense Gauss-Jordan elimination over the states that can
/// reach the goal.
pub fn reach_dense(chain: &Chain, goal: &[bool]) -> Rational {
    let n = chain.len();
    let mut can = goal.to_vec();
    loop {
        let mut grew = false;
        for s in 0..n {
            if !can[s] && chain.row(s).iter().any(|(t, _)| can[*t]) {
                can[s] = true;
                grew = true;
            }
        }
        if !grew {
            break;
        }
    }
    let vars: Vec<usize> = (0..n).filter(|&s| can[s] && !goal[s]).collect();
    let pos = |s: usize| vars.iter().position(|&v| v == s);
    let m = vars.len();
    // (I - P) x = b
    let mut a = vec![vec![Rational::zero(); m + 1]; m];
    for (i, &s) in vars.iter().enumerate() {
        a[i][i] += Rational::one();
        for (t, p) in chain.row(s) {
            if goal[*t] {
                a[i][m] += p;
            } else if let Some(j) = pos(*t) {
                a[i][j] -= p;
            }
        }
    }
    for col in 0..m {
        let pivot = (col..m).find(|&r| !a[r][col].is_zero()).expect("nonsingular system");
        a.swap(col, pivot);
        let inv = a[col][col].recip();
        for x in a[col].iter_mut() {
            *x *= &inv;
        }
        for r in 0..m {
            if r != col && !a[r][col].is_zero() {
                let factor = a[r][col].clone();
                for c in col..=m {
                    let d = &factor * &a[col][c];
                    a[r][c] -= d;
                }
            }
        }
    }
    let value = |s: usize| {
        if goal[s] {
            Rational::one()
        } else {
            pos(s).map(|i| a[i][m].clone()).unwrap_or_else(Rational::zero)
        }
    };
    chain.init().iter().enumerate().map(|(s, p)| p * value(s)).sum()
}

/// Node of an enumerated formula DAG; children refer to earlier nodes.
#[derive(Clone, Copy, Debug)]
pub enum Op {
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

/// Every formula over the atoms `a`, `b` up to a size, as a DAG and as trees.
pub struct Universe {
    pub ops: Vec<Op>,
    pub formulas: Vec<Formula>,
}

pub const ATOMS: [&str; 2] = ["a", "b"];

/// All formulas of size at most `max_size`. With `negated_atoms`, `!a` and
/// `!b` (size 2) are included as leaves, giving every PNF formula;
/// otherwise only positive formulas are produced.
pub fn enumerate(max_size: usize, negated_atoms: bool) -> Universe {
    let mut u = Universe { ops: Vec::new(), formulas: Vec::new() };
    let mut by_size: Vec<Vec<usize>> = vec![Vec::new(); max_size + 1];
    let push = |u: &mut Universe, by_size: &mut Vec<Vec<usize>>, size: usize, op: Op, f: Formula| {
        by_size[size].push(u.ops.len());
        u.ops.push(op);
        u.formulas.push(f);
    };
    push(&mut u, &mut by_size, 1, Op::True, Formula::True);
    push(&mut u, &mut by_size, 1, Op::False, Formula::False);
    for (i, a) in ATOMS.iter().enumerate() {
        push(&mut u, &mut by_size, 1, Op::Atom(i), Formula::atom(*a));
    }
    for size in 2..=max_size {
        if size == 2 && negated_atoms {
            for (i, a) in ATOMS.iter().enumerate() {
                push(&mut u, &mut by_size, 2, Op::NotAtom(i), Formula::not(Formula::atom(*a)));
            }
        }
        for c in by_size[size - 1].clone() {
            let f = Formula::next(u.formulas[c].clone());
            push(&mut u, &mut by_size, size, Op::Next(c), f);
        }
        for ls in 1..size - 1 {
            let rs = size - 1 - ls;
            for l in by_size[ls].clone() {
                for r in by_size[rs].clone() {
                    let (fl, fr) = (u.formulas[l].clone(), u.formulas[r].clone());
                    push(&mut u, &mut by_size, size, Op::And(l, r), Formula::and(fl.clone(), fr.clone()));
                    push(&mut u, &mut by_size, size, Op::Or(l, r), Formula::or(fl.clone(), fr.clone()));
                    push(&mut u, &mut by_size, size, Op::Until(l, r), Formula::until(fl.clone(), fr.clone()));
                    push(&mut u, &mut by_size, size, Op::Release(l, r), Formula::release(fl, fr));
                }
            }
        }
    }
    u
}

/// Words evaluated side by side: bit `l` of every mask is word number `l`.
/// `letters[i][a]` marks the words where atom `a` holds at position `i`;
/// position `n - 1` is followed by `loop_start`.
pub struct Lanes {
    pub letters: Vec<[u64; 2]>,
    pub loop_start: usize,
    pub valid: u64,
}

/// A position of a word template: a fixed letter (bitmask over `a`, `b`) or
/// a letter that ranges over all four values.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Slot {
    Fixed(u8),
    Free,
}

/// All words matching a template, 64 at a time. The first three free
/// positions vary inside a batch; further free positions vary across batches.
pub fn batches(template: &[Slot], loop_start: usize) -> Vec<Lanes> {
    let free: Vec<usize> = (0..template.len()).filter(|&i| template[i] == Slot::Free).collect();
    batches_with_inner(template, loop_start, &free[..free.len().min(3)])
}

/// As [`batches`], with the (at most three) positions that vary inside a batch chosen explicitly.
pub fn batches_with_inner(template: &[Slot], loop_start: usize, inner: &[usize]) -> Vec<Lanes> {
    assert!(inner.len() <= 3 && inner.iter().all(|&i| template[i] == Slot::Free));
    let outer: Vec<usize> = (0..template.len()).filter(|i| template[*i] == Slot::Free && !inner.contains(i)).collect();
    let valid = if inner.len() == 3 { u64::MAX } else { (1u64 << (2 * inner.len() as u32)) - 1 };
    let lane_mask =
        |j: usize, atom: usize| (0..64u64).filter(|l| l >> (2 * j + atom) & 1 == 1).fold(0u64, |m, l| m | 1 << l);
    let fixed = |x: usize| -> [u64; 2] { [0, 1].map(|a| if x >> a & 1 == 1 { u64::MAX } else { 0 }) };
    let mut out = Vec::new();
    for choice in 0..1usize << (2 * outer.len()) {
        let mut letters = vec![[0u64; 2]; template.len()];
        for (i, slot) in template.iter().enumerate() {
            if let Slot::Fixed(x) = slot {
                letters[i] = fixed(*x as usize);
            }
        }
        for (j, &i) in inner.iter().enumerate() {
            letters[i] = [lane_mask(j, 0), lane_mask(j, 1)];
        }
        for (k, &i) in outer.iter().enumerate() {
            letters[i] = fixed(choice >> (2 * k) & 3);
        }
        out.push(Lanes { letters, loop_start, valid });
    }
    out
}

/// Truth of every DAG node at every position of every lane word, written
/// to `out[node * n + position]`. Until and Release are the least and
/// greatest fixpoints of their expansion laws, reached after two backward
/// sweeps.
pub fn eval_lanes(ops: &[Op], lanes: &Lanes, out: &mut Vec<u64>) {
    let n = lanes.letters.len();
    let succ = |i: usize| if i + 1 < n { i + 1 } else { lanes.loop_start };
    out.clear();
    out.resize(ops.len() * n, 0);
    for (k, op) in ops.iter().enumerate() {
        let base = k * n;
        match *op {
            Op::True => out[base..base + n].fill(u64::MAX),
            Op::False => {}
            Op::Atom(a) => {
                for i in 0..n {
                    out[base + i] = lanes.letters[i][a];
                }
            }
            Op::NotAtom(a) => {
                for i in 0..n {
                    out[base + i] = !lanes.letters[i][a];
                }
            }
            Op::And(l, r) => {
                for i in 0..n {
                    out[base + i] = out[l * n + i] & out[r * n + i];
                }
            }
            Op::Or(l, r) => {
                for i in 0..n {
                    out[base + i] = out[l * n + i] | out[r * n + i];
                }
            }
            Op::Next(c) => {
                for i in 0..n {
                    out[base + i] = out[c * n + succ(i)];
                }
            }
            Op::Until(l, r) => {
                for _ in 0..2 {
                    for i in (0..n).rev() {
                        out[base + i] = out[r * n + i] | (out[l * n + i] & out[base + succ(i)]);
                    }
                }
            }
            Op::Release(l, r) => {
                out[base..base + n].fill(u64::MAX);
                for _ in 0..2 {
                    for i in (0..n).rev() {
                        out[base + i] = out[r * n + i] & (out[l * n + i] | out[base + succ(i)]);
                    }
                }
            }
        }
    }
}

/// The lane word `lane` of a batch as a library word.
pub fn lane_word(lanes: &Lanes, lane: u32) -> UpWord {
    let set = |i: usize| -> LabelSet {
        ATOMS
            .iter()
            .enumerate()
            .filter(|(a, _)| lanes.letters[i][*a] >> lane & 1 == 1)
            .map(|(_, s)| s.to_string())
            .collect()
    };
    let n = lanes.letters.len();
    UpWord::new((0..lanes.loop_start).map(set).collect(), (lanes.loop_start..n).map(set).collect()).unwrap()
}

/// Every word over `{a, b}` with a prefix of at most `max_prefix` letters and
/// a cycle of at most `max_cycle` letters.
pub fn all_words(max_prefix: usize, max_cycle: usize) -> Vec<UpWord> {
    let mut out = Vec::new();
    for p in 0..=max_prefix {
        for c in 1..=max_cycle {
            let n = p + c;
            for w in 0..1usize << (2 * n) {
                let set = |i: usize| -> LabelSet {
                    ATOMS
                        .iter()
                        .enumerate()
                        .filter(|(a, _)| w >> (2 * i + a) & 1 == 1)
                        .map(|(_, s)| s.to_string())
                        .collect()
                };
                out.push(UpWord::new((0..p).map(set).collect(), (p..n).map(set).collect()).unwrap());
            }
        }
    }
    out
}

/// Random temporal formula over `atoms`; negation only on atoms when `negation` is set.
pub fn random_ltl(rng: &mut impl Rng, atoms: &[&str], depth: usize, negation: bool) -> Formula {
    if depth == 0 || rng.gen_bool(0.25) {
        let a = Formula::atom(atoms[rng.gen_range(0..atoms.len())]);
        return match rng.gen_range(0..8) {
            0 => Formula::True,
            1 => Formula::False,
            2 if negation => Formula::not(a),
            _ => a,
        };
    }
    let d = depth - 1;
    match rng.gen_range(0..7) {
        0 => Formula::and(random_ltl(rng, atoms, d, negation), random_ltl(rng, atoms, d, negation)),
        1 => Formula::or(random_ltl(rng, atoms, d, negation), random_ltl(rng, atoms, d, negation)),
        2 => Formula::next(random_ltl(rng, atoms, d, negation)),
        3 => Formula::until(random_ltl(rng, atoms, d, negation), random_ltl(rng, atoms, d, negation)),
        4 => Formula::release(random_ltl(rng, atoms, d, negation), random_ltl(rng, atoms, d, negation)),
        5 => Formula::eventually(random_ltl(rng, atoms, d, negation)),
        _ => Formula::always(random_ltl(rng, atoms, d, negation)),
    }
}

/// All lassos of `model` with at most `max_len` distinct positions, as
/// label words.
pub fn lasso_words(model: &Pts, max_len: usize) -> Vec<(Vec<String>, UpWord)> {
    let mut succ: std::collections::BTreeMap<&str, Vec<&str>> = Default::default();
    for t in model.transitions().values() {
        succ.entry(t.source.as_str()).or_default().push(t.target.as_str());
    }
    let mut out = Vec::new();
    let mut stack: Vec<Vec<&str>> = vec![vec![model.initial()]];
    while let Some(path) = stack.pop() {
        let last = *path.last().unwrap();
        let nexts = succ.get(last).cloned().unwrap_or_default();
        for (j, v) in path.iter().enumerate() {
            if nexts.contains(v) {
                let label = |s: &&str| model.label(s).unwrap().clone();
                let word =
                    UpWord::new(path[..j].iter().map(label).collect(), path[j..].iter().map(label).collect()).unwrap();
                out.push((path.iter().map(|s| s.to_string()).collect(), word));
            }
        }
        if path.len() < max_len {
            for n in nexts {
                let mut p = path.clone();
                p.push(n);
                stack.push(p);
            }
        }
    }
    out
}
