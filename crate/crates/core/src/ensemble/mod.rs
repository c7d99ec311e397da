//! All networks on a signed digraph, graph-level verdicts, and the
//! exhaustive and randomized harnesses built on them.

mod census;
mod conjecture;
mod fast;
mod robust;

pub use census::{
    census, census_aggregates, census_network, census_tables, CensusReport, DetailLevel,
    GraphAggregate, GraphSummary, TheoremCounterexample, TheoremTally, CENSUS_MAX_N,
};
pub use conjecture::{
    conjecture_search, conjecture_search_with_aggregates, examine_graph, random_graph, Conjecture,
    ConjectureViolation, GraphOutcome, SearchMode, SearchReport, SignWeights,
};
pub use fast::{fast_attractors, fast_flags};
pub use robust::{robust_falsify, RobustMode, RobustOptions, RobustReport};

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::dynamics::{classify, Property};
use crate::graph::{
    hyp_evaluate, GraphError, HypothesisReport, SignSet, SignedDigraph, Theorem,
    DEFAULT_CYCLE_CAP, DEFAULT_SEARCH_BUDGET,
};
use crate::network::{extract, BooleanNetwork, DEFAULT_MAX_N};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EnsembleError {
    #[error("vertex {vertex} has in-degree {degree}, above the bound {bound}")]
    InDegreeTooLarge {
        vertex: usize,
        degree: usize,
        bound: usize,
    },
    #[error("enumeration exceeds the budget of {limit} networks")]
    EnumerationBudgetExceeded { limit: u64 },
    #[error("graph has {n} vertices; state-space analysis is capped at {max}")]
    TooManyComponents { n: usize, max: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Limits shared by every enumeration and search.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budgets {
    /// Maximum number of signed cycles enumerated per graph.
    pub cycle_cap: usize,
    /// Maximum size of `F(G)` (and of each local function space).
    pub enum_budget: u64,
    /// Node budget for each signed path search.
    pub search_budget: u64,
    /// Maximum number of in-neighbours of a vertex.
    pub max_in_degree: usize,
    /// Maximum number of components for state-space work.
    pub max_n: usize,
}

impl Default for Budgets {
    fn default() -> Self {
        Budgets {
            cycle_cap: DEFAULT_CYCLE_CAP,
            enum_budget: 100_000_000,
            search_budget: DEFAULT_SEARCH_BUDGET,
            max_in_degree: 5,
            max_n: DEFAULT_MAX_N,
        }
    }
}

/// The admissible local functions of one component: truth tables over its
/// in-neighbours (in increasing order), bit `k` of a table being the value
/// at the neighbour assignment `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalFunctionSpace {
    pub component: usize,
    pub inputs: Vec<usize>,
    pub signs: Vec<SignSet>,
    pub tables: Vec<u64>,
}

impl LocalFunctionSpace {
    /// Tables depending on exactly the given inputs with exactly the given
    /// signs (`exact`), or merely never against them (`!exact`).
    pub fn build(
        component: usize,
        inputs: Vec<usize>,
        signs: Vec<SignSet>,
        exact: bool,
        cap: u64,
    ) -> Result<Self, EnsembleError> {
        let d = inputs.len();
        assert!(d <= 6);
        let mut tables = Vec::new();
        let mut st = Builder {
            d,
            signs: &signs,
            exact,
            cap,
            out: &mut tables,
        };
        if !st.run(0, 0) {
            return Err(EnsembleError::EnumerationBudgetExceeded { limit: cap });
        }
        Ok(LocalFunctionSpace {
            component,
            inputs,
            signs,
            tables,
        })
    }

    pub fn len(&self) -> usize {
        self.tables.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tables.is_empty()
    }
}

struct Builder<'a> {
    d: usize,
    signs: &'a [SignSet],
    exact: bool,
    cap: u64,
    out: &'a mut Vec<u64>,
}

impl Builder<'_> {
    /// Assigns table bits in increasing index order. Returns false when the
    /// cap is exceeded.
    fn run(&mut self, x: u32, table: u64) -> bool {
        if x == 1 << self.d {
            if !self.exact || self.realizes(table) {
                if self.out.len() as u64 >= self.cap {
                    return false;
                }
                self.out.push(table);
            }
            return true;
        }
        'value: for v in [0u64, 1] {
            for j in 0..self.d {
                if x >> j & 1 == 0 {
                    continue;
                }
                let before = table >> (x ^ (1 << j)) & 1;
                let ok = match self.signs[j] {
                    SignSet::POS => before <= v,
                    SignSet::NEG => before >= v,
                    SignSet::BOTH => true,
                    _ => before == v,
                };
                if !ok {
                    continue 'value;
                }
            }
            if !self.run(x + 1, table | v << x) {
                return false;
            }
        }
        true
    }

    fn realizes(&self, table: u64) -> bool {
        (0..self.d).all(|j| local_influence(self.d, table, j) == self.signs[j])
    }
}

/// Signs of the effect of input `j` on a `d`-input table.
pub(crate) fn local_influence(d: usize, table: u64, j: usize) -> SignSet {
    let mut up = false;
    let mut down = false;
    for x in 0..1u32 << d {
        if x >> j & 1 == 0 {
            let lo = table >> x & 1;
            let hi = table >> (x | 1 << j) & 1;
            up |= lo < hi;
            down |= lo > hi;
        }
    }
    SignSet::from_flags(up, down)
}

/// A product of local function spaces: the networks on a graph (or on its
/// spanning subgraphs). Index order is mixed-radix with component 0 varying
/// fastest.
#[derive(Clone, Debug)]
pub struct NetworkSpace {
    pub n: usize,
    pub spaces: Vec<LocalFunctionSpace>,
}

impl NetworkSpace {
    pub fn len(&self) -> u128 {
        self.spaces.iter().map(|s| s.len() as u128).product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Network from one table index per component.
    pub fn network_from_choice(&self, choice: &[usize]) -> BooleanNetwork {
        let masks: Vec<u32> = self
            .spaces
            .iter()
            .map(|s| s.inputs.iter().fold(0u32, |m, &j| m | 1 << j))
            .collect();
        BooleanNetwork::from_fn(self.n, |i, x| {
            let t = self.spaces[i].tables[choice[i]];
            t >> extract(x, masks[i]) & 1 == 1
        })
    }

    pub fn network(&self, index: u128) -> BooleanNetwork {
        let mut rest = index;
        let choice: Vec<usize> = self
            .spaces
            .iter()
            .map(|s| {
                let c = (rest % s.len() as u128) as usize;
                rest /= s.len() as u128;
                c
            })
            .collect();
        self.network_from_choice(&choice)
    }

    /// All networks in index order.
    pub fn iter(&self) -> impl Iterator<Item = BooleanNetwork> + '_ {
        let total = self.len();
        let mut choice = vec![0usize; self.n];
        let mut started = false;
        let mut done = total == 0;
        std::iter::from_fn(move || {
            if done {
                return None;
            }
            if started {
                let mut k = 0;
                loop {
                    if k == self.n {
                        done = true;
                        return None;
                    }
                    choice[k] += 1;
                    if choice[k] < self.spaces[k].len() {
                        break;
                    }
                    choice[k] = 0;
                    k += 1;
                }
            }
            started = true;
            if self.n == 0 {
                done = true;
            }
            Some(self.network_from_choice(&choice))
        })
    }
}

fn local_spaces(
    g: &SignedDigraph,
    budgets: &Budgets,
    exact: bool,
) -> Result<NetworkSpace, EnsembleError> {
    let n = g.n();
    if n > budgets.max_n {
        return Err(EnsembleError::TooManyComponents { n, max: budgets.max_n });
    }
    let mut spaces = Vec::with_capacity(n);
    for i in 0..n {
        let inputs: Vec<usize> = (0..n).filter(|&j| g.has_arc(j, i)).collect();
        if inputs.len() > budgets.max_in_degree.min(6) {
            return Err(EnsembleError::InDegreeTooLarge {
                vertex: i + 1,
                degree: inputs.len(),
                bound: budgets.max_in_degree.min(6),
            });
        }
        let signs = inputs.iter().map(|&j| g.signs(j, i)).collect();
        spaces.push(LocalFunctionSpace::build(i, inputs, signs, exact, budgets.enum_budget)?);
    }
    Ok(NetworkSpace { n, spaces })
}

/// `F(G)`: the networks whose interaction graph is exactly `G`.
pub fn enumerate_f(g: &SignedDigraph, budgets: &Budgets) -> Result<NetworkSpace, EnsembleError> {
    local_spaces(g, budgets, true)
}

/// Networks whose interaction graph is a spanning subgraph of `G`.
pub fn enumerate_spanning(
    g: &SignedDigraph,
    budgets: &Budgets,
) -> Result<NetworkSpace, EnsembleError> {
    local_spaces(g, budgets, false)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyVerdict {
    pub holds: bool,
    /// First network in enumeration order lacking the property, as `.bn` text.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<String>,
}

/// Graph-level verdicts: a property holds iff every network on the graph has it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphVerdict {
    pub graph: String,
    pub networks: u64,
    pub verdicts: BTreeMap<Property, PropertyVerdict>,
}

impl GraphVerdict {
    pub fn holds(&self, p: Property) -> bool {
        self.verdicts[&p].holds
    }

    pub fn witness(&self, p: Property) -> Option<&str> {
        self.verdicts[&p].witness.as_deref()
    }
}

fn checked_space(g: &SignedDigraph, budgets: &Budgets) -> Result<NetworkSpace, EnsembleError> {
    let space = enumerate_f(g, budgets)?;
    if space.len() > budgets.enum_budget as u128 {
        return Err(EnsembleError::EnumerationBudgetExceeded {
            limit: budgets.enum_budget,
        });
    }
    Ok(space)
}

/// Classifies every network on `G`. With `F(G)` empty all properties hold
/// vacuously.
pub fn graph_classify(g: &SignedDigraph, budgets: &Budgets) -> Result<GraphVerdict, EnsembleError> {
    let space = checked_space(g, budgets)?;
    let mut verdicts: BTreeMap<Property, PropertyVerdict> = Property::ALL
        .into_iter()
        .map(|p| (p, PropertyVerdict { holds: true, witness: None }))
        .collect();
    let mut count = 0u64;
    for f in space.iter() {
        count += 1;
        let flags = classify(&f).flags;
        for (p, v) in verdicts.iter_mut() {
            if v.holds && !flags.get(*p) {
                v.holds = false;
                v.witness = Some(f.to_bn_text());
            }
        }
    }
    Ok(GraphVerdict {
        graph: g.encoding(),
        networks: count,
        verdicts,
    })
}

/// Outcome of checking one structural result against every network on a graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "result", rename_all = "kebab-case")]
pub enum VerificationResult {
    NotApplicable,
    Verified { networks: u64 },
    CounterexampleFound { property: Option<Property>, witness: String },
}

/// Whether a network can only exist on graphs with vertex-disjoint cycles of
/// both signs: trap-separating with a cyclic attractor among several.
pub(crate) fn oscillating_trap_separating(flags: &crate::dynamics::Flags) -> bool {
    flags.trap_separating && !flags.converging && !flags.fixing
}

/// Checks one result on one graph by enumerating `F(G)`.
pub fn verify_theorem(
    g: &SignedDigraph,
    theorem: Theorem,
    budgets: &Budgets,
) -> Result<VerificationResult, EnsembleError> {
    let hyp = hyp_evaluate(g, budgets.cycle_cap, budgets.search_budget)?;
    verify_with(g, theorem, &hyp, budgets)
}

pub(crate) fn verify_with(
    g: &SignedDigraph,
    theorem: Theorem,
    hyp: &HypothesisReport,
    budgets: &Budgets,
) -> Result<VerificationResult, EnsembleError> {
    if theorem == Theorem::OscillationNeedsDisjointCycles {
        // the premise is about some network on G, the conclusion about G
        let space = checked_space(g, budgets)?;
        for f in space.iter() {
            if oscillating_trap_separating(&classify(&f).flags) {
                if hyp.disjoint_opposite_cycles {
                    return Ok(VerificationResult::Verified {
                        networks: space.len() as u64,
                    });
                }
                return Ok(VerificationResult::CounterexampleFound {
                    property: None,
                    witness: f.to_bn_text(),
                });
            }
        }
        return Ok(VerificationResult::NotApplicable);
    }
    if !hyp.holds(theorem) {
        return Ok(VerificationResult::NotApplicable);
    }
    let space = checked_space(g, budgets)?;
    let mut count = 0;
    for f in space.iter() {
        count += 1;
        let flags = classify(&f).flags;
        for &p in theorem.conclusion() {
            if !flags.get(p) {
                return Ok(VerificationResult::CounterexampleFound {
                    property: Some(p),
                    witness: f.to_bn_text(),
                });
            }
        }
    }
    Ok(VerificationResult::Verified { networks: count })
}

/// Random sign set for one ordered pair given relative weights.
pub(crate) fn pick_signs(weights: &SignWeights, r: f64) -> SignSet {
    let w = [weights.none, weights.positive, weights.negative, weights.both];
    let total: f64 = w.iter().sum();
    let mut acc = 0.0;
    for (k, wk) in w.iter().enumerate() {
        acc += wk / total;
        if r < acc {
            return SignSet::from_code(k as u8);
        }
    }
    SignSet::BOTH
}
