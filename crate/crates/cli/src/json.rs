//! JSON import and export for automata.
//!
//! Schema: `{"letters": [..], "states": n, "initial": q, "finals": [..],
//! "transitions": [[..]..]}` with `transitions[state][letter]`. Letters are
//! display labels; algorithms see only their indices.

use monstate_core::{Cdfa, StateSet};
use serde::{Deserialize, Serialize};

use crate::Error;

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawCdfa {
    letters: Vec<String>,
    states: usize,
    initial: usize,
    finals: Vec<usize>,
    transitions: Vec<Vec<usize>>,
}

/// `a`..`z` for the first 26 letters, then `l26`, `l27`, ..
pub fn default_labels(letter_count: usize) -> Vec<String> {
    (0..letter_count)
        .map(|i| {
            if i < 26 {
                char::from(b'a' + i as u8).to_string()
            } else {
                format!("l{i}")
            }
        })
        .collect()
}

fn labels_of(dfa: &Cdfa) -> Vec<String> {
    dfa.labels()
        .map(<[String]>::to_vec)
        .unwrap_or_else(|| default_labels(dfa.letter_count()))
}

/// Pretty-printed JSON document for `dfa`, ending in a newline.
pub fn to_json(dfa: &Cdfa) -> String {
    let transitions = (0..dfa.state_count())
        .map(|q| (0..dfa.letter_count()).map(|a| dfa.step(q, a)).collect())
        .collect();
    let raw = RawCdfa {
        letters: labels_of(dfa),
        states: dfa.state_count(),
        initial: dfa.initial(),
        finals: dfa.finals().iter().collect(),
        transitions,
    };
    let mut text = serde_json::to_string_pretty(&raw).expect("plain data serializes");
    text.push('\n');
    text
}

/// Parses and validates a JSON document. Schema violations name the
/// offending field, e.g. `transitions[1][0]: state 7 out of range`.
pub fn from_json(text: &str) -> Result<Cdfa, Error> {
    let raw: RawCdfa =
        serde_json::from_str(text).map_err(|e| Error::Format(format!("json: {e}")))?;
    if raw.letters.is_empty() {
        return Err(Error::Format(String::from(
            "letters: need at least one letter",
        )));
    }
    if raw.states == 0 {
        return Err(Error::Format(String::from("states: need at least 1")));
    }
    let check_state = |what: String, q: usize| -> Result<(), Error> {
        if q >= raw.states {
            return Err(Error::Format(format!(
                "{what}: state {q} out of range (must be < {})",
                raw.states
            )));
        }
        Ok(())
    };
    check_state(String::from("initial"), raw.initial)?;
    let mut finals = StateSet::empty(raw.states);
    for (i, &q) in raw.finals.iter().enumerate() {
        check_state(format!("finals[{i}]"), q)?;
        finals.insert(q);
    }
    if raw.transitions.len() != raw.states {
        return Err(Error::Format(format!(
            "transitions: expected {} rows, got {}",
            raw.states,
            raw.transitions.len()
        )));
    }
    let mut table = Vec::with_capacity(raw.states * raw.letters.len());
    for (q, row) in raw.transitions.iter().enumerate() {
        if row.len() != raw.letters.len() {
            return Err(Error::Format(format!(
                "transitions[{q}]: expected {} entries, got {}",
                raw.letters.len(),
                row.len()
            )));
        }
        for (a, &target) in row.iter().enumerate() {
            check_state(format!("transitions[{q}][{a}]"), target)?;
            table.push(target);
        }
    }
    let dfa = Cdfa::new(raw.letters.len(), raw.states, raw.initial, finals, table)?;
    Ok(dfa.with_labels(raw.letters)?)
}
