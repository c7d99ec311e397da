//! Graphviz output. Node and arc order depend only on the input, so the same
//! network always produces the same bytes.

use std::fmt::Write;

use bnsep::network::state_label;
use bnsep::{classify, AsyncGraph, BooleanNetwork, Sign, SignedDigraph};

/// The asynchronous graph: one node per configuration, labelled by its
/// binary string, attractor states filled.
pub fn async_dot(f: &BooleanNetwork) -> String {
    let n = f.n();
    let g = AsyncGraph::new(f);
    let mut in_attractor = vec![false; 1 << n];
    for a in classify(f).attractors {
        for x in a.states.iter() {
            in_attractor[x as usize] = true;
        }
    }
    let mut out = String::from("digraph async {\n  node [shape=box, fontname=\"monospace\"];\n");
    for x in 0..1u32 << n {
        let style = if in_attractor[x as usize] { ", style=filled, fillcolor=lightgrey" } else { "" };
        writeln!(out, "  s{x} [label=\"{}\"{style}];", state_label(n, x)).unwrap();
    }
    for x in 0..1u32 << n {
        for (_, y) in g.successors(x) {
            writeln!(out, "  s{x} -> s{y};").unwrap();
        }
    }
    out.push_str("}\n");
    out
}

/// A signed digraph: positive arcs green, negative arcs red (with a bar head).
pub fn graph_dot(g: &SignedDigraph, names: &[String]) -> String {
    let mut out = String::from("digraph signed {\n  node [shape=circle];\n");
    for (v, name) in names.iter().enumerate().take(g.n()) {
        writeln!(out, "  v{} [label=\"{name}\"];", v + 1).unwrap();
    }
    for (j, i, s) in g.arcs() {
        let attrs = match s {
            Sign::Pos => "color=green, arrowhead=normal",
            Sign::Neg => "color=red, arrowhead=tee",
        };
        writeln!(out, "  v{} -> v{} [{attrs}];", j + 1, i + 1).unwrap();
    }
    out.push_str("}\n");
    out
}

/// Vertex names `1..=n`.
pub fn numbered(n: usize) -> Vec<String> {
    (1..=n).map(|v| v.to_string()).collect()
}
