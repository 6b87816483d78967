//! Graphviz DOT rendering.

use std::collections::BTreeMap;
use std::fmt::Write;

use crate::dfa::Dfa;

fn escape(label: &str) -> String {
    label.replace('\\', "\\\\").replace('"', "\\\"")
}

/// One node per state and one edge per (source, target) pair; letters sharing
/// an edge are joined with commas in letter order.
pub fn export_dot(dfa: &Dfa) -> String {
    let mut out = String::from("digraph automaton {\n    rankdir=LR;\n    node [shape=circle];\n");
    for q in 0..dfa.n() {
        writeln!(out, "    q{q} [label=\"{q}\"];").unwrap();
    }
    for q in 0..dfa.n() {
        let mut edges: BTreeMap<usize, Vec<&str>> = BTreeMap::new();
        for (j, row) in dfa.rows().iter().enumerate() {
            edges.entry(row[q]).or_default().push(dfa.letter_name(j));
        }
        for (target, letters) in edges {
            writeln!(
                out,
                "    q{q} -> q{target} [label=\"{}\"];",
                escape(&letters.join(","))
            )
            .unwrap();
        }
    }
    out.push_str("}\n");
    out
}
