//! Signed digraphs: interaction graphs, strong components, switches and the
//! `.sdg` text format.
//!
//! Vertices are `0..n` internally and `1..=n` in every textual form. Vertex
//! sets are bit masks (`u64`), so graphs have at most 64 vertices.

mod cycles;
mod embed;
mod feedback;
mod hypothesis;

pub use cycles::{
    enumerate_cycles, has_negative_cycle, has_positive_cycle, vertices_on_cycles_by_sign,
    SignedCycle, DEFAULT_CYCLE_CAP,
};
pub use embed::{
    is_embedded, signed_path_search, validate_embedding, EmbeddingWitness, Motif, SignedPath,
    DEFAULT_SEARCH_BUDGET,
};
pub use feedback::{feedback_number, has_linear_cut, FeedbackVariant};
pub use hypothesis::{hyp_evaluate, HypothesisReport, Theorem};
pub(crate) use hypothesis::evaluate_with_cycles;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::network::BooleanNetwork;

/// Largest vertex count supported by the mask representation.
pub const MAX_VERTICES: usize = 64;

pub type VertexMask = u64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("more than {cap} cycles")]
    CycleBudgetExceeded { cap: usize },
    #[error("path search exceeded {limit} nodes")]
    SearchBudgetExceeded { limit: u64 },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("too many vertices: {n} (maximum {max})")]
    TooManyVertices { n: usize, max: usize },
    #[error("invalid graph encoding {0:?}")]
    InvalidEncoding(String),
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Pos,
    #[serde(rename = "-")]
    Neg,
}

impl Sign {
    pub fn mul(self, other: Sign) -> Sign {
        if self == other {
            Sign::Pos
        } else {
            Sign::Neg
        }
    }

    pub fn flip(self) -> Sign {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Pos => '+',
            Sign::Neg => '-',
        }
    }

    pub fn product<I: IntoIterator<Item = Sign>>(signs: I) -> Sign {
        signs.into_iter().fold(Sign::Pos, Sign::mul)
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.symbol())
    }
}

/// Subset of `{+, -}` labelling one ordered pair of vertices.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default, PartialOrd, Ord)]
pub struct SignSet(u8);

impl SignSet {
    pub const EMPTY: SignSet = SignSet(0);
    pub const POS: SignSet = SignSet(1);
    pub const NEG: SignSet = SignSet(2);
    pub const BOTH: SignSet = SignSet(3);

    pub fn of(sign: Sign) -> SignSet {
        match sign {
            Sign::Pos => SignSet::POS,
            Sign::Neg => SignSet::NEG,
        }
    }

    pub fn from_code(code: u8) -> SignSet {
        SignSet(code & 3)
    }

    pub fn from_flags(pos: bool, neg: bool) -> SignSet {
        SignSet(u8::from(pos) | u8::from(neg) << 1)
    }

    pub fn code(self) -> u8 {
        self.0
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, sign: Sign) -> bool {
        self.0 & SignSet::of(sign).0 != 0
    }

    pub fn insert(&mut self, sign: Sign) {
        self.0 |= SignSet::of(sign).0;
    }

    pub fn union(self, other: SignSet) -> SignSet {
        SignSet(self.0 | other.0)
    }

    pub fn is_subset(self, other: SignSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    /// The set with each sign negated.
    pub fn negated(self) -> SignSet {
        SignSet((self.0 & 1) << 1 | (self.0 >> 1))
    }

    /// Signs in the order `+`, `-`.
    pub fn signs(self) -> impl Iterator<Item = Sign> {
        [Sign::Pos, Sign::Neg]
            .into_iter()
            .filter(move |s| self.contains(*s))
    }
}

impl fmt::Display for SignSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            SignSet::EMPTY => f.write_str("∅"),
            SignSet::POS => f.write_str("+"),
            SignSet::NEG => f.write_str("-"),
            _ => f.write_str("±"),
        }
    }
}

/// One strong component, with condensation flags.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct StrongComponent {
    pub vertices: Vec<usize>,
    /// No arc enters the component from outside.
    pub initial: bool,
    /// No arc leaves the component.
    pub terminal: bool,
}

impl StrongComponent {
    pub fn mask(&self) -> VertexMask {
        mask_of(&self.vertices)
    }
}

/// A signed digraph with sign sets on ordered pairs `(j, i)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct SignedDigraph {
    n: usize,
    // index j * n + i holds the signs of the arcs j -> i
    arcs: Vec<SignSet>,
}

pub fn mask_of(vertices: &[usize]) -> VertexMask {
    vertices.iter().fold(0, |m, &v| m | 1 << v)
}

pub fn mask_vertices(mask: VertexMask) -> Vec<usize> {
    let mut out = Vec::new();
    let mut m = mask;
    while m != 0 {
        out.push(m.trailing_zeros() as usize);
        m &= m - 1;
    }
    out
}

/// `{1,3}` style rendering of a vertex mask.
pub fn format_vertex_set(mask: VertexMask) -> String {
    let inner: Vec<String> = mask_vertices(mask).iter().map(|v| (v + 1).to_string()).collect();
    format!("{{{}}}", inner.join(","))
}

#[inline]
pub(crate) fn all_vertices(n: usize) -> VertexMask {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

impl SignedDigraph {
    pub fn new(n: usize) -> Self {
        assert!(n <= MAX_VERTICES, "too many vertices: {n}");
        SignedDigraph {
            n,
            arcs: vec![SignSet::EMPTY; n * n],
        }
    }

    /// Builds a graph from `(j, i, sign)` triples with 0-based vertices.
    pub fn from_arcs(n: usize, arcs: &[(usize, usize, Sign)]) -> Self {
        let mut g = Self::new(n);
        for &(j, i, s) in arcs {
            g.add_arc(j, i, s);
        }
        g
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn add_arc(&mut self, j: usize, i: usize, sign: Sign) {
        assert!(j < self.n && i < self.n);
        self.arcs[j * self.n + i].insert(sign);
    }

    pub fn set_signs(&mut self, j: usize, i: usize, signs: SignSet) {
        self.arcs[j * self.n + i] = signs;
    }

    #[inline]
    pub fn signs(&self, j: usize, i: usize) -> SignSet {
        self.arcs[j * self.n + i]
    }

    pub fn has_arc(&self, j: usize, i: usize) -> bool {
        !self.signs(j, i).is_empty()
    }

    /// All signed arcs `(j, i, sign)` ordered by `j`, then `i`, then `+` before `-`.
    pub fn arcs(&self) -> Vec<(usize, usize, Sign)> {
        let mut out = Vec::new();
        for j in 0..self.n {
            for i in 0..self.n {
                for s in self.signs(j, i).signs() {
                    out.push((j, i, s));
                }
            }
        }
        out
    }

    /// Number of signed arcs (a `±` pair counts twice).
    pub fn arc_count(&self) -> usize {
        self.arcs.iter().map(|s| s.len()).sum()
    }

    pub fn out_mask(&self, j: usize) -> VertexMask {
        (0..self.n)
            .filter(|&i| self.has_arc(j, i))
            .fold(0, |m, i| m | 1 << i)
    }

    pub fn in_mask(&self, i: usize) -> VertexMask {
        (0..self.n)
            .filter(|&j| self.has_arc(j, i))
            .fold(0, |m, j| m | 1 << j)
    }

    /// Out-masks of all vertices, the working form of most algorithms.
    pub fn adjacency(&self) -> Vec<VertexMask> {
        (0..self.n).map(|j| self.out_mask(j)).collect()
    }

    /// Signed out-degree: number of signed arcs leaving `j`.
    pub fn out_degree(&self, j: usize) -> usize {
        (0..self.n).map(|i| self.signs(j, i).len()).sum()
    }

    pub fn in_degree(&self, i: usize) -> usize {
        (0..self.n).map(|j| self.signs(j, i).len()).sum()
    }

    /// Same vertex numbering, arcs touching vertices outside `keep` removed.
    /// Cycles of the result are exactly the cycles of `G[keep]`.
    pub fn restrict(&self, keep: VertexMask) -> SignedDigraph {
        let mut g = self.clone();
        for j in 0..self.n {
            for i in 0..self.n {
                if keep >> j & 1 == 0 || keep >> i & 1 == 0 {
                    g.arcs[j * self.n + i] = SignSet::EMPTY;
                }
            }
        }
        g
    }

    /// `G ∖ I` with vertex numbering preserved.
    pub fn remove_vertices(&self, removed: VertexMask) -> SignedDigraph {
        self.restrict(all_vertices(self.n) & !removed)
    }

    /// `G[I]` relabelled onto `0..|I|` in increasing vertex order.
    pub fn induced(&self, vertices: &[usize]) -> SignedDigraph {
        let mut g = SignedDigraph::new(vertices.len());
        for (a, &j) in vertices.iter().enumerate() {
            for (b, &i) in vertices.iter().enumerate() {
                g.arcs[a * g.n + b] = self.signs(j, i);
            }
        }
        g
    }

    /// The switch `G^I`: an arc changes sign iff exactly one endpoint is in `I`.
    pub fn switch(&self, components: VertexMask) -> SignedDigraph {
        let mut g = self.clone();
        for j in 0..self.n {
            for i in 0..self.n {
                if (components >> j ^ components >> i) & 1 == 1 {
                    g.arcs[j * self.n + i] = self.signs(j, i).negated();
                }
            }
        }
        g
    }

    /// The symmetric version `G^s`.
    pub fn symmetric(&self) -> SignedDigraph {
        let mut g = self.clone();
        for j in 0..self.n {
            for i in 0..self.n {
                g.arcs[j * self.n + i] = self.signs(j, i).union(self.signs(i, j));
            }
        }
        g
    }

    /// Every signed arc of `self` is an arc of `other` (same vertex count).
    pub fn is_subgraph_of(&self, other: &SignedDigraph) -> bool {
        self.n == other.n
            && self
                .arcs
                .iter()
                .zip(&other.arcs)
                .all(|(a, b)| a.is_subset(*b))
    }

    pub fn is_full_positive(&self) -> bool {
        self.arcs.iter().all(|s| !s.contains(Sign::Neg))
    }

    /// Strong components in a topological order of the condensation
    /// (sources first), ties broken by smallest vertex.
    pub fn strong_components(&self) -> Vec<StrongComponent> {
        let adj = self.adjacency();
        let comps = scc_masks(&adj, all_vertices(self.n));
        let comp_of = |v: usize| comps.iter().position(|&c| c >> v & 1 == 1).unwrap();
        let k = comps.len();
        let mut preds = vec![0u64; k];
        let mut has_in = vec![false; k];
        let mut has_out = vec![false; k];
        for j in 0..self.n {
            for i in mask_vertices(adj[j]) {
                let (a, b) = (comp_of(j), comp_of(i));
                if a != b {
                    preds[b] |= 1 << a;
                    has_out[a] = true;
                    has_in[b] = true;
                }
            }
        }
        // Kahn's algorithm choosing the component with the smallest vertex.
        let mut placed = 0u64;
        let mut out = Vec::with_capacity(k);
        while out.len() < k {
            let next = (0..k)
                .filter(|&c| placed >> c & 1 == 0 && preds[c] & !placed == 0)
                .min_by_key(|&c| comps[c].trailing_zeros())
                .expect("condensation is acyclic");
            placed |= 1 << next;
            out.push(StrongComponent {
                vertices: mask_vertices(comps[next]),
                initial: !has_in[next],
                terminal: !has_out[next],
            });
        }
        out
    }

    pub fn is_strong(&self) -> bool {
        self.n > 0 && scc_masks(&self.adjacency(), all_vertices(self.n)).len() == 1
    }

    /// No cycle at all in the underlying digraph (loops count as cycles).
    pub fn is_acyclic(&self) -> bool {
        is_acyclic_within(&self.adjacency(), all_vertices(self.n))
    }

    /// Vertices reachable from `sources` (reflexively).
    pub fn reachable_from(&self, sources: VertexMask) -> VertexMask {
        reach(&self.adjacency(), sources, all_vertices(self.n))
    }

    /// Compact code: two bits per ordered pair, pair `(j, i)` at position
    /// `j * n + i`. Only for graphs with at most 8 vertices.
    pub fn code(&self) -> u128 {
        assert!(self.n <= 8, "graph code needs n <= 8");
        self.arcs
            .iter()
            .enumerate()
            .fold(0u128, |c, (p, s)| c | (s.code() as u128) << (2 * p))
    }

    pub fn from_code(n: usize, code: u128) -> SignedDigraph {
        assert!(n <= 8);
        let mut g = SignedDigraph::new(n);
        for p in 0..n * n {
            g.arcs[p] = SignSet::from_code((code >> (2 * p)) as u8);
        }
        g
    }

    /// Canonical text key `"n:hex"`, the hex digits holding the 2-bit sign
    /// codes of all ordered pairs, most significant pair first.
    pub fn encoding(&self) -> String {
        let digits = (2 * self.n * self.n).div_ceil(4);
        let mut nibbles = vec![0u8; digits.max(1)];
        for (p, s) in self.arcs.iter().enumerate() {
            let bit = 2 * p;
            nibbles[bit / 4] |= s.code() << (bit % 4);
        }
        let hex: String = nibbles
            .iter()
            .rev()
            .map(|d| char::from_digit(*d as u32, 16).unwrap())
            .collect();
        format!("{}:{}", self.n, hex)
    }

    pub fn from_encoding(text: &str) -> Result<SignedDigraph, GraphError> {
        let bad = || GraphError::InvalidEncoding(text.to_string());
        let (n, hex) = text.split_once(':').ok_or_else(bad)?;
        let n: usize = n.parse().map_err(|_| bad())?;
        if n > MAX_VERTICES {
            return Err(bad());
        }
        let digits = (2 * n * n).div_ceil(4);
        if hex.len() != digits.max(1) {
            return Err(bad());
        }
        let mut g = SignedDigraph::new(n);
        for (k, c) in hex.chars().rev().enumerate() {
            let d = c.to_digit(16).ok_or_else(bad)? as u8;
            for half in 0..2 {
                let p = (4 * k + 2 * half) / 2;
                let code = d >> (2 * half) & 3;
                if p < n * n {
                    g.arcs[p] = SignSet::from_code(code);
                } else if code != 0 {
                    return Err(bad());
                }
            }
        }
        Ok(g)
    }

    /// `.sdg` text: header plus one line per signed arc.
    pub fn to_sdg(&self) -> String {
        let mut out = format!("vertices: {}\n", self.n);
        for (j, i, s) in self.arcs() {
            out.push_str(&format!("{} -> {} {}\n", j + 1, i + 1, s));
        }
        out
    }

    pub fn parse_sdg(text: &str) -> Result<SignedDigraph, GraphError> {
        let mut graph: Option<SignedDigraph> = None;
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let err = |message: String| GraphError::Parse { line, message };
            let Some(g) = graph.as_mut() else {
                let count = content
                    .strip_prefix("vertices:")
                    .ok_or_else(|| err("expected header 'vertices: <n>'".into()))?
                    .trim();
                let n: usize = count
                    .parse()
                    .map_err(|_| err(format!("invalid vertex count {count:?}")))?;
                if n > MAX_VERTICES {
                    return Err(GraphError::TooManyVertices { n, max: MAX_VERTICES });
                }
                graph = Some(SignedDigraph::new(n));
                continue;
            };
            let tokens: Vec<&str> = content.split_whitespace().collect();
            let [from, "->", to, sign] = tokens[..] else {
                return Err(err(format!("expected 'j -> i +|-', found {content:?}")));
            };
            let vertex = |t: &str| -> Result<usize, GraphError> {
                match t.parse::<usize>() {
                    Ok(v) if v >= 1 && v <= g.n => Ok(v - 1),
                    _ => Err(err(format!("invalid vertex {t:?}"))),
                }
            };
            let (j, i) = (vertex(from)?, vertex(to)?);
            let s = match sign {
                "+" => Sign::Pos,
                "-" => Sign::Neg,
                _ => return Err(err(format!("invalid sign {sign:?}"))),
            };
            g.add_arc(j, i, s);
        }
        graph.ok_or(GraphError::Parse {
            line: text.lines().count().max(1),
            message: "missing header 'vertices: <n>'".into(),
        })
    }
}

/// The signed interaction graph `G(f)`.
pub fn interaction_graph(f: &BooleanNetwork) -> SignedDigraph {
    let n = f.n();
    let mut g = SignedDigraph::new(n);
    for i in 0..n {
        for j in 0..n {
            let (up, down) = f.influence(j, i);
            g.set_signs(j, i, SignSet::from_flags(up, down));
        }
    }
    g
}

/// Why no switch makes the graph full-positive.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Error, Serialize, Deserialize)]
pub enum NotSwitchable {
    #[error("a pair carries both signs")]
    BothSignPair,
    #[error("the symmetric version has a negative cycle")]
    NegativeCycle,
}

/// A set `I` with `G^I` full-positive, if one exists. The smallest vertex of
/// each weakly connected component is kept out of `I`.
pub fn full_positive_switch(g: &SignedDigraph) -> Result<VertexMask, NotSwitchable> {
    let n = g.n();
    let s = g.symmetric();
    if (0..n).any(|j| (0..n).any(|i| s.signs(j, i) == SignSet::BOTH)) {
        return Err(NotSwitchable::BothSignPair);
    }
    let mut side: Vec<Option<bool>> = vec![None; n];
    for root in 0..n {
        if side[root].is_some() {
            continue;
        }
        side[root] = Some(false);
        let mut stack = vec![root];
        while let Some(v) = stack.pop() {
            let sv = side[v].unwrap();
            for w in 0..n {
                let signs = s.signs(v, w);
                if signs.is_empty() {
                    continue;
                }
                let want = sv ^ signs.contains(Sign::Neg);
                match side[w] {
                    None => {
                        side[w] = Some(want);
                        stack.push(w);
                    }
                    Some(sw) if sw != want => return Err(NotSwitchable::NegativeCycle),
                    _ => {}
                }
            }
        }
    }
    Ok((0..n).filter(|&v| side[v] == Some(true)).fold(0, |m, v| m | 1 << v))
}

/// Vertices reachable from `sources` using only vertices in `within`.
pub(crate) fn reach(adj: &[VertexMask], sources: VertexMask, within: VertexMask) -> VertexMask {
    let mut seen = sources & within;
    let mut frontier = seen;
    while frontier != 0 {
        let v = frontier.trailing_zeros() as usize;
        frontier &= frontier - 1;
        let new = adj[v] & within & !seen;
        seen |= new;
        frontier |= new;
    }
    seen
}

/// Strong components (as masks) of the subgraph induced by `within`, ordered
/// by smallest vertex.
pub(crate) fn scc_masks(adj: &[VertexMask], within: VertexMask) -> Vec<VertexMask> {
    let n = adj.len();
    let mut radj = vec![0u64; n];
    for j in 0..n {
        for i in mask_vertices(adj[j]) {
            radj[i] |= 1 << j;
        }
    }
    let mut remaining = within;
    let mut out = Vec::new();
    while remaining != 0 {
        let v = remaining.trailing_zeros() as usize;
        let fwd = reach(adj, 1 << v, remaining);
        let bwd = reach(&radj, 1 << v, remaining);
        let comp = fwd & bwd;
        out.push(comp);
        remaining &= !comp;
    }
    out
}

/// Whether `G[within]` has no cycle (loops included).
pub(crate) fn is_acyclic_within(adj: &[VertexMask], within: VertexMask) -> bool {
    let mut left = within;
    loop {
        // peel vertices with no in-arc from the remaining set
        let mut sources = 0u64;
        for v in mask_vertices(left) {
            let has_in = mask_vertices(left).iter().any(|&u| adj[u] >> v & 1 == 1);
            if !has_in {
                sources |= 1 << v;
            }
        }
        if sources == 0 {
            return left == 0;
        }
        left &= !sources;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k2pm() -> SignedDigraph {
        let mut g = SignedDigraph::new(2);
        for j in 0..2 {
            for i in 0..2 {
                g.set_signs(j, i, SignSet::BOTH);
            }
        }
        g
    }

    #[test]
    fn sign_set_algebra() {
        assert_eq!(SignSet::POS.negated(), SignSet::NEG);
        assert_eq!(SignSet::BOTH.negated(), SignSet::BOTH);
        assert_eq!(SignSet::EMPTY.negated(), SignSet::EMPTY);
        assert_eq!(SignSet::BOTH.signs().collect::<Vec<_>>(), vec![Sign::Pos, Sign::Neg]);
        assert_eq!(Sign::Neg.mul(Sign::Neg), Sign::Pos);
    }

    #[test]
    fn interaction_graph_of_xor_pair_is_k2pm() {
        let f = BooleanNetwork::from_fn(2, |_, x| x.count_ones() == 1);
        assert_eq!(interaction_graph(&f), k2pm());
    }

    #[test]
    fn constant_network_has_no_arcs() {
        let f = BooleanNetwork::from_fn(3, |i, _| i == 1);
        assert_eq!(interaction_graph(&f).arc_count(), 0);
    }

    #[test]
    fn strong_components_of_a_path_follow_the_path() {
        let g = SignedDigraph::from_arcs(3, &[(2, 1, Sign::Pos), (1, 0, Sign::Pos)]);
        let comps = g.strong_components();
        let order: Vec<Vec<usize>> = comps.iter().map(|c| c.vertices.clone()).collect();
        assert_eq!(order, vec![vec![2], vec![1], vec![0]]);
        assert!(comps[0].initial && !comps[0].terminal);
        assert!(comps[2].terminal);
        assert!(!g.is_strong());
        assert!(g.is_acyclic());
    }

    #[test]
    fn switch_rules() {
        let g = SignedDigraph::from_arcs(
            3,
            &[(0, 1, Sign::Pos), (1, 2, Sign::Neg), (2, 2, Sign::Neg), (2, 0, Sign::Pos)],
        );
        assert_eq!(g.switch(0), g);
        assert_eq!(g.switch(0b111), g);
        assert_eq!(g.switch(0b001), g.switch(0b110));
        let h = g.switch(0b010);
        assert_eq!(h.signs(0, 1), SignSet::NEG);
        assert_eq!(h.signs(1, 2), SignSet::POS);
        assert_eq!(h.signs(2, 2), SignSet::NEG);
        assert_eq!(h.signs(2, 0), SignSet::POS);
        assert_eq!(h.switch(0b010), g);
    }

    #[test]
    fn harary_switch_witnesses() {
        let pos = SignedDigraph::from_arcs(2, &[(0, 1, Sign::Pos), (1, 0, Sign::Pos)]);
        assert_eq!(full_positive_switch(&pos), Ok(0));
        let neg_pair = SignedDigraph::from_arcs(2, &[(0, 1, Sign::Neg), (1, 0, Sign::Neg)]);
        assert_eq!(full_positive_switch(&neg_pair), Ok(0b10));
        assert!(neg_pair.switch(0b10).is_full_positive());
        let mixed = SignedDigraph::from_arcs(2, &[(0, 1, Sign::Pos), (1, 0, Sign::Neg)]);
        assert_eq!(full_positive_switch(&mixed), Err(NotSwitchable::BothSignPair));
        let odd = SignedDigraph::from_arcs(
            3,
            &[(0, 1, Sign::Neg), (1, 2, Sign::Pos), (2, 0, Sign::Pos)],
        );
        assert_eq!(full_positive_switch(&odd), Err(NotSwitchable::NegativeCycle));
        assert_eq!(full_positive_switch(&k2pm()), Err(NotSwitchable::BothSignPair));
    }

    #[test]
    fn sdg_roundtrip() {
        let text = "# two vertices\nvertices: 2\n1 -> 2 +\n1 -> 2 -\n2 -> 2 +\n";
        let g = SignedDigraph::parse_sdg(text).unwrap();
        assert_eq!(g.signs(0, 1), SignSet::BOTH);
        assert_eq!(g.signs(1, 1), SignSet::POS);
        assert_eq!(SignedDigraph::parse_sdg(&g.to_sdg()).unwrap(), g);
        assert!(SignedDigraph::parse_sdg("vertices: 2\n1 -> 3 +").is_err());
        assert!(SignedDigraph::parse_sdg("1 -> 2 +").is_err());
        assert!(SignedDigraph::parse_sdg("vertices: 2\n1 => 2 +").is_err());
        assert!(SignedDigraph::parse_sdg("").is_err());
    }

    #[test]
    fn encoding_roundtrip() {
        let g = k2pm();
        assert_eq!(g.encoding(), "2:ff");
        assert_eq!(SignedDigraph::from_encoding("2:ff").unwrap(), g);
        let h = SignedDigraph::from_arcs(3, &[(2, 0, Sign::Neg), (0, 0, Sign::Pos)]);
        assert_eq!(SignedDigraph::from_encoding(&h.encoding()).unwrap(), h);
        assert_eq!(SignedDigraph::from_code(3, h.code()), h);
        assert_eq!(SignedDigraph::new(0).encoding(), "0:0");
        assert!(SignedDigraph::from_encoding("2:fff").is_err());
    }

    #[test]
    fn induced_and_restrict_agree_on_arcs() {
        let g = k2pm();
        let h = g.induced(&[1]);
        assert_eq!(h.n(), 1);
        assert_eq!(h.signs(0, 0), SignSet::BOTH);
        let r = g.restrict(0b10);
        assert_eq!(r.arc_count(), 2);
    }
}
