//! Exploration strategies, progress curves and sampled cross-checks.
//!
//! [`explore`] mimics a model checker expanding transitions one at a time;
//! its searches are nested across budgets. [`interval_estimate`] samples
//! finite prefixes of a chain and classifies each as satisfying every
//! continuation, violating every continuation, or undecided, which brackets
//! the measure of a positive formula from both sides.

mod estimate;
mod explore;
pub mod random;

pub use estimate::{exact_bracket, hoeffding_slack, interval_estimate, ExactBracket, IntervalEstimate, GENERATOR};
pub use explore::{curve_csv, explore, explore_order, progress_curve, CurveRow, CurveValue, Strategy};
