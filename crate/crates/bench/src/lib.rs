//! Workloads shared by the benchmarks.

use lprog::sim::random::layered_pts;
use lprog::{explore, parse, Formula, Pts, Search, Strategy};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// A model, a partial search of three quarters of its transitions and a formula.
pub struct Workload {
    pub model: Pts,
    pub search: Search,
    pub formula: Formula,
}

/// Layered random model with `states` states explored by `strategy`.
pub fn workload(seed: u64, states: usize, back: f64, strategy: Strategy, formula: &str) -> Workload {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let model = layered_pts(&mut rng, states, 2, 3, 4, back);
    let budget = model.transitions().len() * 3 / 4;
    let search = explore(&model, strategy, budget);
    Workload { model, search, formula: parse(formula).expect("valid formula") }
}
