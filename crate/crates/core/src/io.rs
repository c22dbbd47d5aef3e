//! JSON model and search files.
//!
//! ```json
//! { "ap": ["a","b"], "initial": "s0",
//!   "states": [ {"id":"s0","labels":["a"]} ],
//!   "transitions": [ {"id":"t01","source":"s0","target":"s1","prob":"1/2"} ] }
//! ```
//!
//! Probabilities are strings (`"1/2"`, `"1"`); decimals are rejected.
//! A search file is `{ "transitions": ["t01", "t02"] }`.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pts::{Pts, Search};
use crate::rational::{format_rational, parse_rational};

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ModelFile {
    ap: Vec<String>,
    initial: String,
    states: Vec<StateEntry>,
    transitions: Vec<TransitionEntry>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct StateEntry {
    id: String,
    #[serde(default)]
    labels: Vec<String>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TransitionEntry {
    id: String,
    source: String,
    target: String,
    prob: String,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SearchFile {
    transitions: Vec<String>,
}

/// Parses a model file. The result is not validated; call [`Pts::validate_input`].
pub fn model_from_json(text: &str) -> Result<Pts> {
    let file: ModelFile = serde_json::from_str(text)?;
    let mut seen = BTreeSet::new();
    for atom in &file.ap {
        if !seen.insert(atom) {
            return Err(Error::Format(format!("duplicate proposition {atom} in ap")));
        }
    }
    let mut model = Pts::new(file.ap.iter().cloned(), file.initial);
    for state in file.states {
        let labels: BTreeSet<_> = state.labels.iter().collect();
        if labels.len() != state.labels.len() {
            return Err(Error::Format(format!("state {} lists a label twice", state.id)));
        }
        model.add_state(state.id, state.labels)?;
    }
    for t in file.transitions {
        let prob = parse_rational(&t.prob).map_err(|e| Error::Format(format!("transition {}: {e}", t.id)))?;
        model.add_transition(t.id, t.source, t.target, prob)?;
    }
    Ok(model)
}

pub fn model_to_json(model: &Pts) -> String {
    let file = ModelFile {
        ap: model.ap().iter().cloned().collect(),
        initial: model.initial().to_string(),
        states: model
            .states()
            .iter()
            .map(|(id, labels)| StateEntry { id: id.clone(), labels: labels.iter().cloned().collect() })
            .collect(),
        transitions: model
            .transitions()
            .iter()
            .map(|(id, t)| TransitionEntry {
                id: id.clone(),
                source: t.source.clone(),
                target: t.target.clone(),
                prob: format_rational(&t.prob),
            })
            .collect(),
    };
    serde_json::to_string_pretty(&file).expect("model serializes")
}

pub fn search_from_json(text: &str) -> Result<Search> {
    let file: SearchFile = serde_json::from_str(text)?;
    let count = file.transitions.len();
    let search: Search = file.transitions.into_iter().collect();
    if search.len() != count {
        return Err(Error::Format("search lists a transition twice".into()));
    }
    Ok(search)
}

pub fn search_to_json(search: &Search) -> String {
    let file = SearchFile { transitions: search.iter().map(str::to_string).collect() };
    serde_json::to_string_pretty(&file).expect("search serializes")
}
