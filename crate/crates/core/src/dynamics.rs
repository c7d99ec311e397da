//! Asynchronous dynamics: attractors, trap spaces and the five separation
//! properties.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::network::{
    deposit, extract, low_mask, state_label, BooleanNetwork, NetworkError, StateSet, Subspace,
};

/// The five properties of an asynchronous graph.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Property {
    /// Every attractor is a fixed point.
    Fixing,
    /// There is exactly one attractor.
    Converging,
    /// Distinct attractors have disjoint smallest subspaces.
    Separating,
    /// Distinct attractors have disjoint smallest trap spaces.
    TrapSeparating,
    /// Separating, and each attractor's smallest subspace is a trap space.
    Trapping,
}

impl Property {
    pub const ALL: [Property; 5] = [
        Property::Fixing,
        Property::Converging,
        Property::Separating,
        Property::TrapSeparating,
        Property::Trapping,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Property::Fixing => "fixing",
            Property::Converging => "converging",
            Property::Separating => "separating",
            Property::TrapSeparating => "trap-separating",
            Property::Trapping => "trapping",
        }
    }

    pub fn from_id(id: &str) -> Option<Property> {
        Property::ALL.into_iter().find(|p| p.id() == id)
    }

    /// Adds every property implied by the given ones and returns them in order.
    pub fn closure<I: IntoIterator<Item = Property>>(props: I) -> Vec<Property> {
        let mut set: BTreeSet<Property> = props.into_iter().collect();
        if set.contains(&Property::Fixing) {
            set.insert(Property::Trapping);
        }
        if set.contains(&Property::Converging) || set.contains(&Property::Trapping) {
            set.insert(Property::TrapSeparating);
        }
        if set.contains(&Property::TrapSeparating) {
            set.insert(Property::Separating);
        }
        set.into_iter().collect()
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default, Serialize, Deserialize)]
pub struct Flags {
    pub fixing: bool,
    pub converging: bool,
    pub separating: bool,
    pub trap_separating: bool,
    pub trapping: bool,
}

impl Flags {
    pub fn get(&self, p: Property) -> bool {
        match p {
            Property::Fixing => self.fixing,
            Property::Converging => self.converging,
            Property::Separating => self.separating,
            Property::TrapSeparating => self.trap_separating,
            Property::Trapping => self.trapping,
        }
    }

    /// fixing ⇒ trapping ⇒ trap-separating ⇒ separating, converging ⇒ trap-separating.
    pub fn chain_holds(&self) -> bool {
        (!self.fixing || self.trapping)
            && (!self.trapping || self.trap_separating)
            && (!self.trap_separating || self.separating)
            && (!self.converging || self.trap_separating)
    }
}

/// The asynchronous graph of one network, or the union of the asynchronous
/// graphs of several networks on the same components.
#[derive(Clone, Debug)]
pub struct AsyncGraph<'a> {
    n: usize,
    nets: Vec<&'a BooleanNetwork>,
}

impl<'a> AsyncGraph<'a> {
    pub fn new(f: &'a BooleanNetwork) -> Self {
        AsyncGraph {
            n: f.n(),
            nets: vec![f],
        }
    }

    pub fn union(fs: &[&'a BooleanNetwork]) -> Result<Self, NetworkError> {
        let first = fs.first().ok_or(NetworkError::EmptySet)?;
        for f in fs {
            if f.n() != first.n() {
                return Err(NetworkError::DimensionMismatch {
                    expected: first.n(),
                    found: f.n(),
                });
            }
        }
        Ok(AsyncGraph {
            n: first.n(),
            nets: fs.to_vec(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Components that can flip at `x`.
    #[inline]
    pub fn unstable(&self, x: u32) -> u32 {
        self.nets.iter().fold(0, |m, f| m | f.unstable(x))
    }

    /// Out-arcs of `x` as (component, target state), by component.
    pub fn successors(&self, x: u32) -> Vec<(usize, u32)> {
        let mut m = self.unstable(x);
        let mut out = Vec::with_capacity(m.count_ones() as usize);
        while m != 0 {
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            out.push((i, x ^ (1 << i)));
        }
        out
    }

    /// All arcs `(x, y)` in increasing order of `x`, then component.
    pub fn arcs(&self) -> Vec<(u32, u32)> {
        (0..1u32 << self.n)
            .flat_map(|x| self.successors(x).into_iter().map(move |(_, y)| (x, y)))
            .collect()
    }

    pub fn is_trap_set(&self, xs: &StateSet) -> bool {
        xs.iter().all(|x| {
            self.successors(x)
                .into_iter()
                .all(|(_, y)| xs.contains(y))
        })
    }

    pub fn is_trap_space(&self, s: &Subspace) -> bool {
        s.states().all(|x| self.unstable(x) & s.fixed_mask() == 0)
    }

    /// `⟨X⟩` starting from a subspace: free every fixed component along which
    /// an arc leaves, until none does.
    pub fn trap_closure(&self, start: Subspace) -> Subspace {
        let mut s = start;
        loop {
            let fixed = s.fixed_mask();
            let mut escaping = 0;
            for x in s.states() {
                escaping |= self.unstable(x) & fixed;
                if escaping == fixed {
                    break;
                }
            }
            if escaping == 0 {
                return s;
            }
            s = s.widen(escaping);
        }
    }

    /// The smallest trap space containing a nonempty set.
    pub fn smallest_trap_space(&self, xs: &StateSet) -> Result<Subspace, NetworkError> {
        Ok(self.trap_closure(xs.smallest_subspace()?))
    }

    /// Attractors (terminal strong components) ordered by smallest state.
    pub fn attractors(&self) -> Vec<StateSet> {
        if self.n <= 6 {
            small_attractors(self)
        } else {
            tarjan_attractors(self)
        }
    }
}

/// Transitive closure on at most 64 states with one bit mask per state.
fn small_attractors(g: &AsyncGraph<'_>) -> Vec<StateSet> {
    let size = 1usize << g.n;
    let mut reach = [0u64; 64];
    for x in 0..size {
        let mut m = 1u64 << x;
        for (_, y) in g.successors(x as u32) {
            m |= 1 << y;
        }
        reach[x] = m;
    }
    for k in 0..size {
        let rk = reach[k];
        for r in reach.iter_mut().take(size) {
            if *r >> k & 1 == 1 {
                *r |= rk;
            }
        }
    }
    let mut found: Vec<u64> = Vec::new();
    for x in 0..size {
        let r = reach[x];
        let mut m = r;
        let mut terminal = true;
        while m != 0 {
            let y = m.trailing_zeros() as usize;
            m &= m - 1;
            if reach[y] != r {
                terminal = false;
                break;
            }
        }
        if terminal && r.trailing_zeros() as usize == x {
            found.push(r);
        }
    }
    found
        .into_iter()
        .map(|mut m| {
            let mut set = StateSet::empty(g.n);
            while m != 0 {
                set.insert(m.trailing_zeros());
                m &= m - 1;
            }
            set
        })
        .collect()
}

/// Iterative Tarjan on the implicit graph, keeping terminal components.
fn tarjan_attractors(g: &AsyncGraph<'_>) -> Vec<StateSet> {
    const UNSEEN: u32 = 0;
    const DONE: u32 = u32::MAX;
    let size = 1usize << g.n;
    // index[v]: 0 unseen, DONE once assigned to a component, else dfs index + 1
    let mut index = vec![UNSEEN; size];
    // low[v]: lowlink while active, component id once done
    let mut low = vec![0u32; size];
    let mut stack: Vec<u32> = Vec::new();
    let mut calls: Vec<(u32, u32)> = Vec::new();
    let mut counter = 0u32;
    let mut comp_id = 0u32;
    let mut out = Vec::new();

    for root in 0..size as u32 {
        if index[root as usize] != UNSEEN {
            continue;
        }
        counter += 1;
        index[root as usize] = counter;
        low[root as usize] = counter;
        stack.push(root);
        calls.push((root, g.unstable(root)));
        while let Some(frame) = calls.last_mut() {
            let v = frame.0;
            if frame.1 != 0 {
                let i = frame.1.trailing_zeros();
                frame.1 &= frame.1 - 1;
                let w = v ^ (1 << i);
                match index[w as usize] {
                    UNSEEN => {
                        counter += 1;
                        index[w as usize] = counter;
                        low[w as usize] = counter;
                        stack.push(w);
                        calls.push((w, g.unstable(w)));
                    }
                    DONE => {}
                    iw => {
                        let lv = &mut low[v as usize];
                        *lv = (*lv).min(iw);
                    }
                }
                continue;
            }
            calls.pop();
            if let Some(parent) = calls.last() {
                let lv = low[v as usize];
                let lp = &mut low[parent.0 as usize];
                *lp = (*lp).min(lv);
            }
            if low[v as usize] == index[v as usize] {
                let mut members = Vec::new();
                loop {
                    let w = stack.pop().expect("tarjan stack");
                    index[w as usize] = DONE;
                    low[w as usize] = comp_id;
                    members.push(w);
                    if w == v {
                        break;
                    }
                }
                let terminal = members.iter().all(|&x| {
                    let mut m = g.unstable(x);
                    while m != 0 {
                        let i = m.trailing_zeros();
                        m &= m - 1;
                        if low[(x ^ (1 << i)) as usize] != comp_id {
                            return false;
                        }
                    }
                    true
                });
                if terminal {
                    out.push(StateSet::from_states(g.n, members));
                }
                comp_id += 1;
            }
        }
    }
    out.sort_by_key(|a| a.min());
    out
}

/// One attractor with its smallest subspace `[A]` and trap space `⟨A⟩`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct AttractorInfo {
    pub states: StateSet,
    pub subspace: Subspace,
    pub trap_space: Subspace,
}

impl AttractorInfo {
    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn is_fixed_point(&self) -> bool {
        self.states.len() == 1
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Classification {
    pub n: usize,
    pub attractors: Vec<AttractorInfo>,
    pub flags: Flags,
}

impl Classification {
    pub fn has(&self, p: Property) -> bool {
        self.flags.get(p)
    }

    pub fn report(&self) -> ClassificationReport {
        ClassificationReport {
            n: self.n,
            attractors: self
                .attractors
                .iter()
                .map(|a| AttractorReport {
                    states: a.states.labels(),
                    subspace: a.subspace,
                    trap_space: a.trap_space,
                })
                .collect(),
            flags: self.flags,
        }
    }
}

/// Serializable view of a classification; states are labels.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub n: usize,
    pub attractors: Vec<AttractorReport>,
    pub flags: Flags,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct AttractorReport {
    pub states: Vec<String>,
    pub subspace: Subspace,
    pub trap_space: Subspace,
}

/// Classifies an asynchronous graph (single network or union).
pub fn classify_graph(g: &AsyncGraph<'_>) -> Classification {
    let attractors: Vec<AttractorInfo> = g
        .attractors()
        .into_iter()
        .map(|states| {
            let subspace = states.smallest_subspace().expect("attractors are nonempty");
            let trap_space = g.trap_closure(subspace);
            AttractorInfo {
                states,
                subspace,
                trap_space,
            }
        })
        .collect();
    assert!(!attractors.is_empty(), "every asynchronous graph has an attractor");
    let pairwise = |key: fn(&AttractorInfo) -> Subspace| {
        attractors.iter().enumerate().all(|(k, a)| {
            attractors[k + 1..]
                .iter()
                .all(|b| !key(a).intersects(&key(b)))
        })
    };
    let separating = pairwise(|a| a.subspace);
    let flags = Flags {
        fixing: attractors.iter().all(|a| a.is_fixed_point()),
        converging: attractors.len() == 1,
        separating,
        trap_separating: pairwise(|a| a.trap_space),
        trapping: separating && attractors.iter().all(|a| a.subspace == a.trap_space),
    };
    assert!(flags.chain_holds(), "property implications violated: {flags:?}");
    Classification {
        n: g.n(),
        attractors,
        flags,
    }
}

pub fn classify(f: &BooleanNetwork) -> Classification {
    classify_graph(&AsyncGraph::new(f))
}

/// Classifies the union of the asynchronous graphs of several networks.
pub fn union_attractors(fs: &[&BooleanNetwork]) -> Result<Classification, NetworkError> {
    Ok(classify_graph(&AsyncGraph::union(fs)?))
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DecompositionError {
    #[error("component sets must partition the components and both be nonempty")]
    NotAPartition,
    #[error("interaction graph has an arc from {from} to {to} (second block to first)")]
    PreconditionFailed { from: usize, to: usize },
}

/// Outcome of the product check for one attractor.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct FactorCheck {
    pub attractor: Vec<String>,
    pub first: Vec<String>,
    pub second: Vec<String>,
    pub is_product: bool,
    pub first_is_attractor: bool,
    pub second_is_attractor: bool,
}

impl FactorCheck {
    pub fn passed(&self) -> bool {
        self.is_product && self.first_is_attractor && self.second_is_attractor
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct DecompositionReport {
    pub checks: Vec<FactorCheck>,
}

impl DecompositionReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(FactorCheck::passed)
    }
}

/// With no arc from `second` to `first`, every attractor `A` should be a
/// product `A1 × A2`, where `A1` is an attractor of the network on `first`
/// (with `second` held at zero) and `A2` is an attractor of the union of the
/// networks on `second` obtained by fixing `first` to each state of `A1`.
pub fn check_decomposition(
    f: &BooleanNetwork,
    first: u32,
    second: u32,
) -> Result<DecompositionReport, DecompositionError> {
    let n = f.n();
    let all = low_mask(n);
    if first & second != 0 || first | second != all || first == 0 || second == 0 {
        return Err(DecompositionError::NotAPartition);
    }
    for j in (0..n).filter(|j| second >> j & 1 == 1) {
        for i in (0..n).filter(|i| first >> i & 1 == 1) {
            if f.depends_on(i, j) {
                return Err(DecompositionError::PreconditionFailed { from: j + 1, to: i + 1 });
            }
        }
    }
    let n1 = first.count_ones() as usize;
    let n2 = second.count_ones() as usize;
    let g1 = f
        .subnetwork(&Subspace::new(n, second, 0).expect("valid subspace"))
        .expect("same dimension");
    let attractors1 = AsyncGraph::new(&g1).attractors();
    let mut checks = Vec::new();
    for a in AsyncGraph::new(f).attractors() {
        let p1 = StateSet::from_states(n1, a.iter().map(|x| extract(x, first)));
        let p2 = StateSet::from_states(n2, a.iter().map(|x| extract(x, second)));
        let is_product = a.len() == p1.len() * p2.len();
        let first_is_attractor = attractors1.contains(&p1);
        let fibers: Vec<BooleanNetwork> = p1
            .iter()
            .map(|z| {
                let s = Subspace::new(n, first, deposit(z, first)).expect("valid subspace");
                f.subnetwork(&s).expect("same dimension")
            })
            .collect();
        let refs: Vec<&BooleanNetwork> = fibers.iter().collect();
        let union = AsyncGraph::union(&refs).expect("uniform dimension");
        let second_is_attractor = union.attractors().contains(&p2);
        checks.push(FactorCheck {
            attractor: a.labels(),
            first: p1.iter().map(|z| state_label(n1, z)).collect(),
            second: p2.iter().map(|z| state_label(n2, z)).collect(),
            is_product,
            first_is_attractor,
            second_is_attractor,
        });
    }
    Ok(DecompositionReport { checks })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::network::config;

    fn xor_pair() -> BooleanNetwork {
        BooleanNetwork::from_fn(2, |_, x| x.count_ones() == 1)
    }

    #[test]
    fn successors_of_xor_pair() {
        let f = xor_pair();
        let g = AsyncGraph::new(&f);
        assert_eq!(
            g.successors(config("11").bits()),
            vec![(0, config("01").bits()), (1, config("10").bits())]
        );
        assert!(g.successors(0).is_empty());
    }

    #[test]
    fn xor_pair_attractors_and_flags() {
        let c = classify(&xor_pair());
        let sets: Vec<Vec<String>> = c.attractors.iter().map(|a| a.states.labels()).collect();
        assert_eq!(sets, vec![vec!["00"], vec!["10", "01", "11"]]);
        assert_eq!(c.attractors[1].subspace, Subspace::whole(2));
        assert_eq!(c.flags, Flags::default());
    }

    #[test]
    fn identity_has_all_singletons() {
        let f = BooleanNetwork::identity(3);
        let c = classify(&f);
        assert_eq!(c.attractors.len(), 8);
        assert!(c.flags.fixing && c.flags.trapping && !c.flags.converging);
    }

    #[test]
    fn self_negation() {
        let f = BooleanNetwork::from_fn(1, |_, x| x == 0);
        let c = classify(&f);
        assert_eq!(c.attractors.len(), 1);
        assert_eq!(c.attractors[0].states.labels(), vec!["0", "1"]);
        assert_eq!(c.attractors[0].trap_space, Subspace::whole(1));
        assert!(c.flags.converging && !c.flags.fixing);
    }

    #[test]
    fn tarjan_matches_closure_route() {
        // a rotating network with several attractors
        for seed in 0..40u64 {
            let f = BooleanNetwork::from_fn(5, |i, x| {
                let h = (x as u64 + 1).wrapping_mul(0x9e37_79b9_7f4a_7c15 ^ seed.wrapping_mul(31) ^ i as u64);
                h >> 61 & 1 == 1
            });
            let g = AsyncGraph::new(&f);
            assert_eq!(small_attractors(&g), tarjan_attractors(&g), "seed {seed}");
        }
    }

    #[test]
    fn trap_tests() {
        let f = xor_pair();
        let g = AsyncGraph::new(&f);
        assert!(g.is_trap_set(&StateSet::full(2)));
        let half = Subspace::from_pattern("1*").unwrap();
        assert!(!g.is_trap_space(&half));
        assert_eq!(g.trap_closure(half), Subspace::whole(2));
        assert_eq!(
            g.trap_closure(Subspace::point(&config("00"))),
            Subspace::point(&config("00"))
        );
    }

    #[test]
    fn zero_component_network() {
        let f = BooleanNetwork::from_fn(0, |_, _| false);
        let c = classify(&f);
        assert_eq!(c.attractors.len(), 1);
        assert!(c.flags.fixing && c.flags.converging);
    }

    #[test]
    fn union_of_identical_networks_is_idempotent() {
        let f = xor_pair();
        assert_eq!(union_attractors(&[&f, &f]).unwrap(), classify(&f));
        assert!(union_attractors(&[]).is_err());
        let h = BooleanNetwork::identity(3);
        assert!(union_attractors(&[&f, &h]).is_err());
    }

    #[test]
    fn property_closure() {
        assert_eq!(
            Property::closure([Property::Fixing]),
            vec![Property::Fixing, Property::Separating, Property::TrapSeparating, Property::Trapping]
        );
        assert_eq!(
            Property::closure([Property::Converging]),
            vec![Property::Converging, Property::Separating, Property::TrapSeparating]
        );
    }

    #[test]
    fn decomposition_with_constant_block() {
        // x1 oscillates with itself, x2 copies a constant
        let f = BooleanNetwork::from_fn(2, |i, x| if i == 0 { x & 1 == 0 } else { true });
        let r = check_decomposition(&f, 0b01, 0b10).unwrap();
        assert!(r.all_passed());
        assert_eq!(
            check_decomposition(&f, 0b01, 0b01),
            Err(DecompositionError::NotAPartition)
        );
        let g = xor_pair();
        assert_eq!(
            check_decomposition(&g, 0b01, 0b10),
            Err(DecompositionError::PreconditionFailed { from: 2, to: 1 })
        );
    }
}
