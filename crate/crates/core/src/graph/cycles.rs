//! Signed cycles: enumeration and sign-existence tests.

use std::fmt;
use std::ops::ControlFlow;

use super::{all_vertices, mask_vertices, scc_masks, GraphError, Sign, SignSet, SignedDigraph, VertexMask};

pub const DEFAULT_CYCLE_CAP: usize = 1_000_000;

/// A simple cycle regarded as a subgraph: arc `k` goes from `vertices[k]` to
/// `vertices[(k + 1) % len]` with sign `signs[k]`. The first vertex is the
/// smallest one.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct SignedCycle {
    pub vertices: Vec<usize>,
    pub signs: Vec<Sign>,
}

impl SignedCycle {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn sign(&self) -> Sign {
        Sign::product(self.signs.iter().copied())
    }

    pub fn is_positive(&self) -> bool {
        self.sign() == Sign::Pos
    }

    pub fn vertex_mask(&self) -> VertexMask {
        self.vertices.iter().fold(0, |m, &v| m | 1 << v)
    }

    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize, Sign)> + '_ {
        let len = self.len();
        (0..len).map(move |k| (self.vertices[k], self.vertices[(k + 1) % len], self.signs[k]))
    }

    /// Whether every arc exists in `g` with the recorded sign.
    pub fn is_valid_in(&self, g: &SignedDigraph) -> bool {
        let mut seen = 0u64;
        for &v in &self.vertices {
            if v >= g.n() || seen >> v & 1 == 1 {
                return false;
            }
            seen |= 1 << v;
        }
        !self.is_empty() && self.arcs().all(|(j, i, s)| g.signs(j, i).contains(s))
    }
}

impl fmt::Display for SignedCycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (j, _, s) in self.arcs() {
            write!(f, "{} -{}-> ", j + 1, s)?;
        }
        write!(f, "{}", self.vertices[0] + 1)
    }
}

/// Johnson's algorithm on the underlying digraph. Calls `visit` with each
/// elementary cycle as a vertex sequence starting at its smallest vertex.
pub(crate) fn visit_underlying_cycles<F>(adj: &[VertexMask], within: VertexMask, mut visit: F) -> ControlFlow<()>
where
    F: FnMut(&[usize]) -> ControlFlow<()>,
{
    let n = adj.len();
    struct State<'a> {
        adj: &'a [VertexMask],
        allowed: VertexMask,
        start: usize,
        blocked: VertexMask,
        b: Vec<VertexMask>,
        stack: Vec<usize>,
    }

    fn unblock(st: &mut State<'_>, u: usize) {
        st.blocked &= !(1 << u);
        let mut pending = std::mem::take(&mut st.b[u]);
        while pending != 0 {
            let w = pending.trailing_zeros() as usize;
            pending &= pending - 1;
            if st.blocked >> w & 1 == 1 {
                unblock(st, w);
            }
        }
    }

    fn circuit<F: FnMut(&[usize]) -> ControlFlow<()>>(
        st: &mut State<'_>,
        v: usize,
        visit: &mut F,
    ) -> Result<bool, ()> {
        let mut found = false;
        st.stack.push(v);
        st.blocked |= 1 << v;
        let mut succ = st.adj[v] & st.allowed;
        while succ != 0 {
            let w = succ.trailing_zeros() as usize;
            succ &= succ - 1;
            if w == st.start {
                if visit(&st.stack).is_break() {
                    return Err(());
                }
                found = true;
            } else if st.blocked >> w & 1 == 0 && circuit(st, w, visit)? {
                found = true;
            }
        }
        if found {
            unblock(st, v);
        } else {
            let mut succ = st.adj[v] & st.allowed;
            while succ != 0 {
                let w = succ.trailing_zeros() as usize;
                succ &= succ - 1;
                st.b[w] |= 1 << v;
            }
        }
        st.stack.pop();
        Ok(found)
    }

    for s in 0..n {
        if within >> s & 1 == 0 {
            continue;
        }
        let upper = within & !((1u64 << s) - 1);
        let comp = scc_masks(adj, upper)
            .into_iter()
            .find(|c| c >> s & 1 == 1)
            .unwrap_or(0);
        if comp == 1 << s && adj[s] >> s & 1 == 0 {
            continue;
        }
        let mut st = State {
            adj,
            allowed: comp,
            start: s,
            blocked: 0,
            b: vec![0; n],
            stack: Vec::new(),
        };
        if circuit(&mut st, s, &mut visit).is_err() {
            return ControlFlow::Break(());
        }
    }
    ControlFlow::Continue(())
}

/// Calls `visit` on every signed cycle (each choice of sign per arc of each
/// underlying cycle), in canonical order within one underlying cycle.
fn visit_signed_cycles<F>(g: &SignedDigraph, within: VertexMask, mut visit: F) -> ControlFlow<()>
where
    F: FnMut(&[usize], &[Sign]) -> ControlFlow<()>,
{
    let adj = g.adjacency();
    let mut signs = Vec::new();
    visit_underlying_cycles(&adj, within, |cyc| {
        let len = cyc.len();
        let sets: Vec<SignSet> = (0..len).map(|k| g.signs(cyc[k], cyc[(k + 1) % len])).collect();
        expand(&sets, &mut signs, &mut |s| visit(cyc, s))
    })
}

fn expand<F>(sets: &[SignSet], prefix: &mut Vec<Sign>, visit: &mut F) -> ControlFlow<()>
where
    F: FnMut(&[Sign]) -> ControlFlow<()>,
{
    if prefix.len() == sets.len() {
        return visit(prefix);
    }
    for s in sets[prefix.len()].signs() {
        prefix.push(s);
        let flow = expand(sets, prefix, visit);
        prefix.pop();
        flow?;
    }
    ControlFlow::Continue(())
}

/// All signed simple cycles, sorted by vertex sequence then sign vector.
/// Fails if there are more than `cap`.
pub fn enumerate_cycles(g: &SignedDigraph, cap: usize) -> Result<Vec<SignedCycle>, GraphError> {
    let mut out = Vec::new();
    let flow = visit_signed_cycles(g, all_vertices(g.n()), |vs, ss| {
        if out.len() == cap {
            return ControlFlow::Break(());
        }
        out.push(SignedCycle {
            vertices: vs.to_vec(),
            signs: ss.to_vec(),
        });
        ControlFlow::Continue(())
    });
    if flow.is_break() {
        return Err(GraphError::CycleBudgetExceeded { cap });
    }
    out.sort();
    Ok(out)
}

/// Whether `G[within]` carries a vertex potential `p` with every arc sign
/// equal to `p(j) p(i)`, restricted to arcs inside one strong component.
/// Returns false exactly when that strong component has a negative cycle.
fn component_balanced(g: &SignedDigraph, comp: VertexMask) -> bool {
    let vs = mask_vertices(comp);
    let mut side = vec![None::<bool>; g.n()];
    side[vs[0]] = Some(false);
    let mut stack = vec![vs[0]];
    while let Some(v) = stack.pop() {
        let sv = side[v].unwrap();
        for &w in &vs {
            // treat arcs in both directions; inside a strong component the
            // signs are consistent iff every cycle is positive
            for signs in [g.signs(v, w), g.signs(w, v)] {
                if signs == SignSet::BOTH {
                    return false;
                }
                if signs.is_empty() {
                    continue;
                }
                let want = sv ^ signs.contains(Sign::Neg);
                match side[w] {
                    None => {
                        side[w] = Some(want);
                        stack.push(w);
                    }
                    Some(sw) if sw != want => return false,
                    _ => {}
                }
            }
        }
    }
    true
}

fn components_with_cycles(g: &SignedDigraph) -> Vec<VertexMask> {
    let adj = g.adjacency();
    scc_masks(&adj, all_vertices(g.n()))
        .into_iter()
        .filter(|&c| c.count_ones() > 1 || adj[c.trailing_zeros() as usize] & c != 0)
        .collect()
}

/// Exact negative-cycle test: a strong component contains a negative cycle
/// iff its signs admit no consistent vertex potential.
pub fn has_negative_cycle(g: &SignedDigraph) -> bool {
    components_with_cycles(g)
        .into_iter()
        .any(|c| !component_balanced(&g.restrict(c), c))
}

/// Positive-cycle test. Balanced components with a cycle have only positive
/// cycles; other components are searched cycle by cycle, giving up after
/// `cap` underlying cycles.
pub fn has_positive_cycle(g: &SignedDigraph, cap: usize) -> Result<bool, GraphError> {
    let comps = components_with_cycles(g);
    let mut unresolved = 0u64;
    for c in comps {
        if component_balanced(&g.restrict(c), c) {
            return Ok(true);
        }
        unresolved |= c;
    }
    if unresolved == 0 {
        return Ok(false);
    }
    let adj = g.adjacency();
    let mut seen = 0usize;
    let mut found = false;
    let mut over = false;
    let _ = visit_underlying_cycles(&adj, unresolved, |cyc| {
        seen += 1;
        if seen > cap {
            over = true;
            return ControlFlow::Break(());
        }
        let len = cyc.len();
        let mut sign = Sign::Pos;
        for k in 0..len {
            let s = g.signs(cyc[k], cyc[(k + 1) % len]);
            if s == SignSet::BOTH {
                found = true;
                return ControlFlow::Break(());
            }
            sign = sign.mul(s.signs().next().unwrap());
        }
        if sign == Sign::Pos {
            found = true;
            return ControlFlow::Break(());
        }
        ControlFlow::Continue(())
    });
    if found {
        Ok(true)
    } else if over {
        Err(GraphError::CycleBudgetExceeded { cap })
    } else {
        Ok(false)
    }
}

/// Vertices lying on at least one positive (resp. negative) cycle.
pub fn vertices_on_cycles_by_sign(
    g: &SignedDigraph,
    cap: usize,
) -> Result<(VertexMask, VertexMask), GraphError> {
    let cycles = enumerate_cycles(g, cap)?;
    Ok(split_by_sign(&cycles))
}

pub(crate) fn split_by_sign(cycles: &[SignedCycle]) -> (VertexMask, VertexMask) {
    let mut pos = 0;
    let mut neg = 0;
    for c in cycles {
        if c.is_positive() {
            pos |= c.vertex_mask();
        } else {
            neg |= c.vertex_mask();
        }
    }
    (pos, neg)
}
