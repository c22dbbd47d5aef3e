//! Progress measures for partial explorations of probabilistic transition
//! systems.
//!
//! A model checker that has explored only some transitions of a system
//! (a [`Search`]) can report how much of the system's behaviour it has
//! already settled for a negation-free LTL property. This crate computes
//! that progress exactly ([`prog_exact`]), a cheap formula-independent lower
//! bound ([`prog_lower_bound`]), whether the search has already found a
//! violation ([`has_found_violation`]), and simulation tools around them.
//!
//! ```
//! use lprog::{parse, prog_exact, Pts, Search, Rational};
//!
//! let mut m = Pts::new(["a"], "s0");
//! m.add_state("s0", Vec::<String>::new()).unwrap();
//! m.add_state("s1", ["a"]).unwrap();
//! m.add_transition("t01", "s0", "s1", Rational::from_integer(1.into())).unwrap();
//! m.add_transition("t11", "s1", "s1", Rational::from_integer(1.into())).unwrap();
//!
//! let search: Search = ["t01"].into_iter().collect();
//! let p = prog_exact(&m, &search, &parse("X a").unwrap()).unwrap();
//! assert_eq!(p.to_string(), "1");
//! ```

pub mod error;
pub mod formula;
pub mod io;
pub mod measure;
pub mod pts;
pub mod qualitative;
pub mod rational;
pub mod sim;

pub use error::{Error, Result};
pub use formula::{dominates, eval_up_word, parse, Formula, ParseError, UpWord};
pub use io::{model_from_json, model_to_json, search_from_json, search_to_json};
pub use measure::{chain_of, ltl_measure, prog_exact, prog_exact_unchecked, prog_lower_bound, Chain, StatePredicate};
pub use pts::{
    build_minimal_extension, build_top_extension, check_extends, trace_prefix, ExecPrefix, LabelSet, Pts, Search,
    Transition, Violation,
};
pub use qualitative::{find_violation, gnba_of, has_found_violation, nba_of, universal_sat, Gnba, Nba, Witness};
pub use rational::{format_rational, parse_rational, to_decimal, Rational};
pub use sim::{explore, interval_estimate, progress_curve, IntervalEstimate, Strategy};
