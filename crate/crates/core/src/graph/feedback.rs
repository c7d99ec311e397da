//! Feedback numbers and the linear-cut condition.

use serde::{Deserialize, Serialize};

use super::{
    all_vertices, has_negative_cycle, has_positive_cycle, is_acyclic_within, GraphError,
    SignedDigraph, VertexMask,
};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FeedbackVariant {
    All,
    Positive,
    Negative,
}

/// Subsets of `0..n` of size `k` in lexicographic (colex-by-mask) order.
pub(crate) fn subsets_of_size(n: usize, k: usize) -> impl Iterator<Item = VertexMask> {
    let limit = all_vertices(n);
    let mut cur = if k == 0 {
        Some(0u64)
    } else if k > n {
        None
    } else {
        Some(all_vertices(k))
    };
    std::iter::from_fn(move || {
        let v = cur?;
        cur = if v == 0 {
            None
        } else {
            // Gosper's hack
            let c = v & v.wrapping_neg();
            let r = v.wrapping_add(c);
            if r == 0 {
                None
            } else {
                let next = (((r ^ v) >> 2) / c) | r;
                if next & !limit != 0 {
                    None
                } else {
                    Some(next)
                }
            }
        };
        Some(v)
    })
}

/// Minimum size of a vertex set whose removal leaves no cycle of the given
/// kind. The positive variant enumerates cycles and may exceed `cap`.
pub fn feedback_number(
    g: &SignedDigraph,
    variant: FeedbackVariant,
    cap: usize,
) -> Result<usize, GraphError> {
    let n = g.n();
    let adj = g.adjacency();
    for k in 0..=n {
        for removed in subsets_of_size(n, k) {
            let kept = all_vertices(n) & !removed;
            let clear = match variant {
                FeedbackVariant::All => is_acyclic_within(&adj, kept),
                FeedbackVariant::Negative => !has_negative_cycle(&g.restrict(kept)),
                FeedbackVariant::Positive => !has_positive_cycle(&g.restrict(kept), cap)?,
            };
            if clear {
                return Ok(k);
            }
        }
    }
    unreachable!("removing every vertex leaves no cycle")
}

/// Linear cut: no arc from a vertex of out-degree at least two to a vertex
/// of in-degree at least two, and every cycle passes through a vertex of in-
/// and out-degree one. Degrees count signed arcs, so a `±` pair counts twice.
///
/// The cycle clause is decided without enumeration: every cycle meets the
/// set of degree-(1,1) vertices iff the graph without them is acyclic.
pub fn has_linear_cut(g: &SignedDigraph) -> bool {
    let n = g.n();
    let outd: Vec<usize> = (0..n).map(|v| g.out_degree(v)).collect();
    let ind: Vec<usize> = (0..n).map(|v| g.in_degree(v)).collect();
    for (j, i, _) in g.arcs() {
        if outd[j] >= 2 && ind[i] >= 2 {
            return false;
        }
    }
    let linear = (0..n)
        .filter(|&v| outd[v] == 1 && ind[v] == 1)
        .fold(0u64, |m, v| m | 1 << v);
    is_acyclic_within(&g.adjacency(), all_vertices(n) & !linear)
}
