//! Worked examples with known verdicts, used by tests, the book and the
//! `fixtures` command.

use crate::dynamics::Property;
use crate::expr::load_network;
use crate::graph::SignedDigraph;
use crate::network::{BooleanNetwork, HARD_MAX_N};

/// A network given as `.bn` text with the properties it is known to have
/// (or lack) and attractors known to be present.
#[derive(Clone, Copy, Debug)]
pub struct NetworkFixture {
    pub name: &'static str,
    pub summary: &'static str,
    pub source: &'static str,
    pub expected: &'static [(Property, bool)],
    /// Each entry lists the labels of one attractor that must appear.
    pub attractors: &'static [&'static [&'static str]],
    /// Smallest subspaces of attractors that must appear, as patterns.
    pub subspaces: &'static [&'static str],
}

impl NetworkFixture {
    pub fn network(&self) -> BooleanNetwork {
        load_network(self.source, HARD_MAX_N).expect("fixture sources are valid")
    }
}

/// A signed digraph with graph-level verdicts over all networks on it.
#[derive(Clone, Copy, Debug)]
pub struct GraphFixture {
    pub name: &'static str,
    pub summary: &'static str,
    pub sdg: &'static str,
    pub network_count: usize,
    pub expected: &'static [(Property, bool)],
}

impl GraphFixture {
    pub fn graph(&self) -> SignedDigraph {
        SignedDigraph::parse_sdg(self.sdg).expect("fixture graphs are valid")
    }
}

use Property::*;

pub const TWO_CYCLIC_ATTRACTORS: NetworkFixture = NetworkFixture {
    name: "two-cyclic-attractors",
    summary: "two cyclic attractors split by x5; separating but not trap-separating",
    source: "x1 = x4 & x5 | !x4 & !x5
x2 = x1 & !x5 | x5 & !x1
x3 = x2 & !x5 | x5 & !x2
x4 = x3 & !x5 | x5 & !x3
x5 = x1 & x3 & !x2 | x1 & x4 & !x3 | x2 & !x1 & !x3 | x3 & !x1 & !x4
",
    expected: &[
        (Separating, true),
        (TrapSeparating, false),
        (Converging, false),
        (Fixing, false),
    ],
    attractors: &[],
    subspaces: &["****0", "****1"],
};

pub const SEPARATING_NOT_TRAP_SEPARATING: NetworkFixture = NetworkFixture {
    name: "separating-not-trap-separating",
    summary: "negative 3-cycle driving a self-sustaining switch",
    source: "x1 = !x3
x2 = !x1
x3 = !x2
x4 = x1 & x2 & x3 | x4 & x1 | x4 & x2 | x4 & x3
",
    expected: &[(Separating, true), (TrapSeparating, false)],
    attractors: &[],
    subspaces: &["***0", "***1"],
};

pub const CONVERGING_NOT_TRAPPING: NetworkFixture = NetworkFixture {
    name: "converging-not-trapping",
    summary: "negative 3-cycle feeding an AND gate",
    source: "x1 = !x3
x2 = !x1
x3 = !x2
x4 = x1 & x2 & x3
",
    expected: &[
        (Converging, true),
        (TrapSeparating, true),
        (Trapping, false),
        (Fixing, false),
    ],
    attractors: &[],
    subspaces: &["***0"],
};

pub const NON_SEPARATING_TWO_COMPONENTS: NetworkFixture = NetworkFixture {
    name: "non-separating-two-components",
    summary: "non-separating with two strong components, one admitting no network",
    source: "x1 = !x1
x2 = !x1 & x3 | x2 & !x3
x3 = x1 & x2 | !x2 & x3
",
    expected: &[(Separating, false)],
    attractors: &[],
    subspaces: &[],
};

pub const NON_SEPARATING_NEGATIVE_INPUT: NetworkFixture = NetworkFixture {
    name: "non-separating-negative-input",
    summary: "non-separating; a self-negating component drives a feedback-two block",
    source: "x1 = x1 & x3 | !x2 & x3
x2 = x2 & x3 | !x1 & x3
x3 = x1 & x2 | !x4
x4 = !x4
",
    expected: &[(Separating, false)],
    attractors: &[],
    subspaces: &[],
};

pub const XOR_PAIR: NetworkFixture = NetworkFixture {
    name: "xor-pair",
    summary: "both components compute x1 xor x2; the graph has every signed arc",
    source: "x1 = x1 ^ x2
x2 = x1 ^ x2
",
    expected: &[
        (Separating, false),
        (Converging, false),
        (Fixing, false),
    ],
    attractors: &[&["00"], &["10", "01", "11"]],
    subspaces: &["00", "**"],
};

pub const NEGATIVE_FEEDBACK_ONE: NetworkFixture = NetworkFixture {
    name: "negative-feedback-one",
    summary: "non-separating although one vertex meets every negative cycle",
    source: "x1 = x1 ^ x2
x2 = !x1 & x2 | x3
x3 = x1
",
    expected: &[(Separating, false)],
    attractors: &[],
    subspaces: &[],
};

pub const H2_EMBEDDED: NetworkFixture = NetworkFixture {
    name: "h2-embedded",
    summary: "non-separating, feedback number two, H2 embedded at vertices 1 and 2",
    source: "x1 = x2 & !x3 | !x2 & x3 | x3 & !x4
x2 = x2 & !x3 | x4
x3 = x1
x4 = x3
",
    expected: &[(Separating, false)],
    attractors: &[],
    subspaces: &[],
};

pub const NO_DISJOINT_POSITIVE_CYCLES: NetworkFixture = NetworkFixture {
    name: "no-disjoint-positive-cycles",
    summary: "non-separating without two disjoint positive cycles",
    source: "x1 = x2 & !x3 | x3 & !x1 | x3 & !x2
x2 = x1 & !x3 | x3 & !x1 | x3 & !x2
x3 = x1 & !x2 | x2 & !x1 | x2 & !x3
",
    expected: &[(Separating, false)],
    attractors: &[],
    subspaces: &[],
};

pub const FEEDBACK_THREE: NetworkFixture = NetworkFixture {
    name: "feedback-three",
    summary: "non-separating rotation; every path between consecutive vertices is positive",
    source: "x1 = !x3 & x1 | !x3 & x2
x2 = !x1 & x2 | !x1 & x3
x3 = !x2 & x3 | !x2 & x1
",
    expected: &[(Separating, false)],
    attractors: &[],
    subspaces: &[],
};

pub const STRONG_FEEDBACK_THREE: NetworkFixture = NetworkFixture {
    name: "strong-feedback-three",
    summary: "strong, feedback number three, positive feedback number two, non-separating",
    source: "x1 = x3 | x1 & !x2
x2 = x4 | x2 & !x1
x3 = x2 & !x3
x4 = x1
",
    expected: &[(Separating, false)],
    attractors: &[],
    subspaces: &[],
};

pub const TRAP_SEPARATING_NOT_TRAPPING: NetworkFixture = NetworkFixture {
    name: "trap-separating-not-trapping",
    summary: "a unique positive cycle meeting every cycle",
    source: "x1 = !x1 & x2
x2 = x1 | !x2
x3 = x1 & !x2
",
    expected: &[(TrapSeparating, true), (Trapping, false)],
    attractors: &[],
    subspaces: &[],
};

pub const STRONG_NOT_TRAPPING: NetworkFixture = NetworkFixture {
    name: "strong-not-trapping",
    summary: "strong, one positive cycle, feedback number one, not trapping",
    source: "x1 = !x3
x2 = !x1
x3 = !x2 & !x4
x4 = x1 & x2 & x3
",
    expected: &[(Trapping, false)],
    attractors: &[],
    subspaces: &[],
};

pub const NOT_FIXING_TWO_STATE: NetworkFixture = NetworkFixture {
    name: "not-fixing-two-state",
    summary: "strong, one negative cycle and two positive cycles, yet a cyclic attractor",
    source: "x1 = !x1 | x2
x2 = x1 & x2
",
    expected: &[(Fixing, false)],
    attractors: &[&["00", "10"]],
    subspaces: &[],
};

pub const NOT_FIXING_THREE_STATE: NetworkFixture = NetworkFixture {
    name: "not-fixing-three-state",
    summary: "a unique positive cycle meeting both negative cycles, yet a cyclic attractor",
    source: "x1 = !x1 | x2
x2 = x1 & !x2
",
    expected: &[(Fixing, false)],
    attractors: &[&["00", "10", "11"]],
    subspaces: &[],
};

/// The two fixing networks whose union is not separating.
pub const ROBUST_PAIR: [&str; 2] = [
    "x1 = !x2 | x1 & x3
x2 = x2 & !x1 | x3 & !x1
x3 = x1 | x2
",
    "x1 = x1 & x3 | x3 & !x2
x2 = x3 | x2 & !x1
x3 = x1 & x2
",
];

pub const NETWORKS: [NetworkFixture; 15] = [
    TWO_CYCLIC_ATTRACTORS,
    SEPARATING_NOT_TRAP_SEPARATING,
    CONVERGING_NOT_TRAPPING,
    NON_SEPARATING_TWO_COMPONENTS,
    NON_SEPARATING_NEGATIVE_INPUT,
    XOR_PAIR,
    NEGATIVE_FEEDBACK_ONE,
    H2_EMBEDDED,
    NO_DISJOINT_POSITIVE_CYCLES,
    FEEDBACK_THREE,
    STRONG_FEEDBACK_THREE,
    TRAP_SEPARATING_NOT_TRAPPING,
    STRONG_NOT_TRAPPING,
    NOT_FIXING_TWO_STATE,
    NOT_FIXING_THREE_STATE,
];

pub const CONSTANT_INPUT_XOR_TARGET: GraphFixture = GraphFixture {
    name: "constant-input-xor-target",
    summary: "one positive and one negative loop, fed by arcs of both signs",
    sdg: "vertices: 2
1 -> 2 +
1 -> 2 -
2 -> 2 +
2 -> 2 -
",
    network_count: 4,
    expected: &[(Separating, true), (Converging, false), (Fixing, false)],
};

pub const K2_PM: GraphFixture = GraphFixture {
    name: "k2pm",
    summary: "the complete signed digraph on two vertices",
    sdg: "vertices: 2
1 -> 1 +
1 -> 1 -
1 -> 2 +
1 -> 2 -
2 -> 1 +
2 -> 1 -
2 -> 2 +
2 -> 2 -
",
    network_count: 4,
    expected: &[(Separating, false)],
};

/// The strong component `{2, 3}` of the graph of
/// [`NON_SEPARATING_TWO_COMPONENTS`], relabelled `{1, 2}`.
pub const EMPTY_ENSEMBLE: GraphFixture = GraphFixture {
    name: "empty-ensemble",
    summary: "no network has exactly this interaction graph",
    sdg: "vertices: 2
1 -> 1 +
1 -> 2 +
1 -> 2 -
2 -> 1 +
2 -> 1 -
2 -> 2 +
",
    network_count: 0,
    expected: &[
        (Separating, true),
        (Converging, true),
        (Fixing, true),
        (TrapSeparating, true),
        (Trapping, true),
    ],
};

pub const GRAPHS: [GraphFixture; 3] = [CONSTANT_INPUT_XOR_TARGET, K2_PM, EMPTY_ENSEMBLE];

pub fn network_fixture(name: &str) -> Option<NetworkFixture> {
    NETWORKS.into_iter().find(|f| f.name == name)
}

pub fn graph_fixture(name: &str) -> Option<GraphFixture> {
    GRAPHS.into_iter().find(|f| f.name == name)
}

/// The family built from `H2` by stretching the arc `1 -> 2` into a positive
/// path through vertices `3..n` (`n >= 3`).
pub fn stretched_h2_source(n: usize) -> String {
    assert!(n >= 3);
    let mut s = String::from("x1 = x1 ^ x2\n");
    s.push_str(&format!("x2 = !x1 & x2 | x{n}\n"));
    s.push_str("x3 = x1\n");
    for k in 4..=n {
        s.push_str(&format!("x{k} = x{}\n", k - 1));
    }
    s
}

pub fn stretched_h2(n: usize) -> BooleanNetwork {
    load_network(&stretched_h2_source(n), HARD_MAX_N).expect("valid source")
}

/// A family that is separating but not trap-separating (`n >= 4`): a ring
/// `1 -> 2 -> ... -> n-1` closed negatively through `n-1` and `n`, with `n`
/// a self-sustaining switch set by the pattern `x1 !x2 x3`.
pub fn ring_with_switch_source(n: usize) -> String {
    assert!(n >= 4);
    let mut s = format!("x1 = !x{} & !x{n}\n", n - 1);
    for k in 2..n {
        s.push_str(&format!("x{k} = x{}\n", k - 1));
    }
    s.push_str(&format!("x{n} = x{n} | x1 & !x2 & x3\n"));
    s
}

pub fn ring_with_switch(n: usize) -> BooleanNetwork {
    load_network(&ring_with_switch_source(n), HARD_MAX_N).expect("valid source")
}
