//! DOT (graphviz) export for automata.

use std::collections::BTreeMap;
use std::fmt::Write;

use monstate_core::Cdfa;

use crate::json::default_labels;

fn escape(label: &str) -> String {
    label.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Renders `dfa` as a left-to-right digraph: the initial state gets an
/// arrow from a point node, finals are double-circled, and parallel edges
/// are collapsed with comma-joined letter labels.
pub fn to_dot(dfa: &Cdfa) -> String {
    let labels = dfa
        .labels()
        .map(<[String]>::to_vec)
        .unwrap_or_else(|| default_labels(dfa.letter_count()));
    let mut out = String::from("digraph cdfa {\n    rankdir=LR;\n    init [shape=point, label=\"\"];\n");
    for q in 0..dfa.state_count() {
        let shape = if dfa.is_final(q) {
            "doublecircle"
        } else {
            "circle"
        };
        writeln!(out, "    q{q} [shape={shape}, label=\"{q}\"];").expect("string write");
    }
    writeln!(out, "    init -> q{};", dfa.initial()).expect("string write");
    for q in 0..dfa.state_count() {
        let mut by_target: BTreeMap<usize, Vec<&str>> = BTreeMap::new();
        for (a, label) in labels.iter().enumerate() {
            by_target.entry(dfa.step(q, a)).or_default().push(label.as_str());
        }
        for (target, letters) in by_target {
            writeln!(
                out,
                "    q{q} -> q{target} [label=\"{}\"];",
                escape(&letters.join(","))
            )
            .expect("string write");
        }
    }
    out.push_str("}\n");
    out
}
