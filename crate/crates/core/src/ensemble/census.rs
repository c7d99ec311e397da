//! Exhaustive census of all networks with at most three components.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::fast::{small_flags, small_graph_code};
use super::{oscillating_trap_separating, Budgets, EnsembleError};
use crate::dynamics::Property;
use crate::graph::{hyp_evaluate, HypothesisReport, SignedDigraph, Theorem};
use crate::network::BooleanNetwork;

/// Largest `n` the census accepts.
pub const CENSUS_MAX_N: usize = 3;

const NONE: u32 = u32::MAX;

/// Per-graph aggregate over `F(G)`. Network indices encode the tables of
/// all components: component `i` owns bits `i * 2^n .. (i + 1) * 2^n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GraphAggregate {
    pub networks: u64,
    /// Smallest index of a network lacking each property (in
    /// [`Property::ALL`] order), if any.
    pub first_violator: [Option<u32>; 5],
    /// Smallest index of a trap-separating network with a cyclic attractor
    /// among several.
    pub first_oscillating: Option<u32>,
}

#[derive(Clone, Copy)]
struct Agg {
    networks: u64,
    violator: [u32; 5],
    oscillating: u32,
}

impl Agg {
    fn new() -> Self {
        Agg {
            networks: 0,
            violator: [NONE; 5],
            oscillating: NONE,
        }
    }

    fn merge(&mut self, other: &Agg) {
        self.networks += other.networks;
        for k in 0..5 {
            self.violator[k] = self.violator[k].min(other.violator[k]);
        }
        self.oscillating = self.oscillating.min(other.oscillating);
    }

    fn public(&self) -> GraphAggregate {
        let opt = |v: u32| (v != NONE).then_some(v);
        GraphAggregate {
            networks: self.networks,
            first_violator: self.violator.map(opt),
            first_oscillating: opt(self.oscillating),
        }
    }
}

#[derive(Default)]
struct Chunk {
    graphs: HashMap<u128, Agg>,
    property_counts: [u64; 5],
    chain_violations: u64,
}

impl Chunk {
    fn merge(mut self, other: Chunk) -> Chunk {
        for (code, agg) in other.graphs {
            self.graphs.entry(code).or_insert_with(Agg::new).merge(&agg);
        }
        for k in 0..5 {
            self.property_counts[k] += other.property_counts[k];
        }
        self.chain_violations += other.chain_violations;
        self
    }
}

/// Tables of the network with the given census index.
pub fn census_tables(n: usize, index: u32) -> Vec<u64> {
    let width = 1u32 << n;
    let mask = (1u64 << width) - 1;
    (0..n)
        .map(|i| (index as u64 >> (i as u32 * width)) & mask)
        .collect()
}

/// The network with the given census index.
pub fn census_network(n: usize, index: u32) -> BooleanNetwork {
    BooleanNetwork::from_small_tables(&census_tables(n, index))
}

fn total_networks(n: usize) -> u64 {
    1u64 << (n << n)
}

fn scan(n: usize) -> Chunk {
    let total = total_networks(n);
    let chunks = 64u64.min(total);
    let step = total.div_ceil(chunks);
    (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut chunk = Chunk::default();
            let mut scratch = Vec::with_capacity(64);
            let mut tables = vec![0u64; n];
            let hi = ((c + 1) * step).min(total);
            for idx in c * step..hi {
                let idx = idx as u32;
                let width = 1u32 << n;
                for (i, t) in tables.iter_mut().enumerate() {
                    *t = (idx as u64 >> (i as u32 * width)) & ((1u64 << width) - 1);
                }
                let flags = small_flags(&tables, &mut scratch);
                let agg = chunk
                    .graphs
                    .entry(small_graph_code(&tables))
                    .or_insert_with(Agg::new);
                agg.networks += 1;
                for (k, p) in Property::ALL.into_iter().enumerate() {
                    if flags.get(p) {
                        chunk.property_counts[k] += 1;
                    } else {
                        agg.violator[k] = agg.violator[k].min(idx);
                    }
                }
                if oscillating_trap_separating(&flags) {
                    agg.oscillating = agg.oscillating.min(idx);
                }
                if !flags.chain_holds() {
                    chunk.chain_violations += 1;
                }
            }
            chunk
        })
        .reduce(Chunk::default, Chunk::merge)
}

/// Per-graph aggregates over every network with `n ≤ 3` components, keyed
/// by graph code. Graphs with no network are absent.
pub fn census_aggregates(n: usize) -> BTreeMap<u128, GraphAggregate> {
    assert!(n <= CENSUS_MAX_N, "census is limited to n ≤ {CENSUS_MAX_N}");
    scan(n)
        .graphs
        .into_iter()
        .map(|(code, agg)| (code, agg.public()))
        .collect()
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremTally {
    pub applicable: u64,
    pub verified: u64,
    pub counterexamples: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremCounterexample {
    pub theorem: Theorem,
    pub graph: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub property: Option<Property>,
    pub witness: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphSummary {
    pub graph: String,
    pub networks: u64,
    pub holds: BTreeMap<Property, bool>,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DetailLevel {
    #[default]
    Summary,
    Graphs,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusReport {
    pub n: usize,
    pub networks: u64,
    /// Networks having each property.
    pub property_counts: BTreeMap<Property, u64>,
    pub chain_violations: u64,
    /// Graphs with at least one network.
    pub graphs: usize,
    /// Graphs on which every network has each property.
    pub graph_property_counts: BTreeMap<Property, usize>,
    pub nonseparating_networks: u64,
    /// Encodings of the graphs carrying a non-separating network.
    pub nonseparating_graphs: Vec<String>,
    pub theorems: BTreeMap<Theorem, TheoremTally>,
    pub counterexamples: Vec<TheoremCounterexample>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub detail: Option<Vec<GraphSummary>>,
}

impl CensusReport {
    /// True iff the implication chain held everywhere and no result was
    /// contradicted.
    pub fn is_clean(&self) -> bool {
        self.chain_violations == 0 && self.counterexamples.is_empty()
    }
}

fn index_of(p: Property) -> usize {
    Property::ALL.iter().position(|&q| q == p).unwrap()
}

/// Checks every result against one graph's aggregate.
pub(crate) fn check_graph(
    n: usize,
    g: &SignedDigraph,
    agg: &GraphAggregate,
    hyp: &HypothesisReport,
) -> Vec<(Theorem, Result<(), TheoremCounterexample>)> {
    let mut out = Vec::new();
    for t in Theorem::ALL {
        if t == Theorem::OscillationNeedsDisjointCycles {
            if let Some(idx) = agg.first_oscillating {
                let res = if hyp.disjoint_opposite_cycles {
                    Ok(())
                } else {
                    Err(TheoremCounterexample {
                        theorem: t,
                        graph: g.encoding(),
                        property: None,
                        witness: census_network(n, idx).to_bn_text(),
                    })
                };
                out.push((t, res));
            }
            continue;
        }
        if !hyp.holds(t) {
            continue;
        }
        let failure = t
            .conclusion()
            .iter()
            .find_map(|&p| agg.first_violator[index_of(p)].map(|idx| (p, idx)));
        let res = match failure {
            None => Ok(()),
            Some((p, idx)) => Err(TheoremCounterexample {
                theorem: t,
                graph: g.encoding(),
                property: Some(p),
                witness: census_network(n, idx).to_bn_text(),
            }),
        };
        out.push((t, res));
    }
    out
}

/// Classifies every network with `n ≤ 3` components, aggregates by
/// interaction graph and checks every structural result on every graph.
pub fn census(n: usize, budgets: &Budgets, detail: DetailLevel) -> Result<CensusReport, EnsembleError> {
    if n > CENSUS_MAX_N {
        return Err(EnsembleError::TooManyComponents { n, max: CENSUS_MAX_N });
    }
    let chunk = scan(n);
    let aggs: Vec<(u128, GraphAggregate)> = chunk
        .graphs
        .iter()
        .map(|(&code, agg)| (code, agg.public()))
        .collect::<BTreeMap<_, _>>()
        .into_iter()
        .collect();

    let checks = aggs
        .par_iter()
        .map(|(code, agg)| {
            let g = SignedDigraph::from_code(n, *code);
            let hyp = hyp_evaluate(&g, budgets.cycle_cap, budgets.search_budget)?;
            Ok(check_graph(n, &g, agg, &hyp))
        })
        .collect::<Result<Vec<_>, EnsembleError>>()?;

    let mut theorems: BTreeMap<Theorem, TheoremTally> =
        Theorem::ALL.into_iter().map(|t| (t, TheoremTally::default())).collect();
    let mut counterexamples = Vec::new();
    for per_graph in checks {
        for (t, res) in per_graph {
            let tally = theorems.get_mut(&t).unwrap();
            tally.applicable += 1;
            match res {
                Ok(()) => tally.verified += 1,
                Err(c) => {
                    tally.counterexamples += 1;
                    counterexamples.push(c);
                }
            }
        }
    }

    let sep = index_of(Property::Separating);
    let mut graph_property_counts: BTreeMap<Property, usize> =
        Property::ALL.into_iter().map(|p| (p, 0)).collect();
    let mut nonseparating_graphs = Vec::new();
    let mut nonseparating_networks = 0;
    for (code, agg) in &aggs {
        for (k, p) in Property::ALL.into_iter().enumerate() {
            if agg.first_violator[k].is_none() {
                *graph_property_counts.get_mut(&p).unwrap() += 1;
            }
        }
        if agg.first_violator[sep].is_some() {
            nonseparating_graphs.push(SignedDigraph::from_code(n, *code).encoding());
        }
    }
    // non-separating networks: total minus separating ones
    let property_counts: BTreeMap<Property, u64> = Property::ALL
        .into_iter()
        .zip(chunk.property_counts)
        .collect();
    let total = total_networks(n);
    nonseparating_networks += total - property_counts[&Property::Separating];

    let detail = (detail == DetailLevel::Graphs).then(|| {
        aggs.iter()
            .map(|(code, agg)| GraphSummary {
                graph: SignedDigraph::from_code(n, *code).encoding(),
                networks: agg.networks,
                holds: Property::ALL
                    .into_iter()
                    .enumerate()
                    .map(|(k, p)| (p, agg.first_violator[k].is_none()))
                    .collect(),
            })
            .collect()
    });

    Ok(CensusReport {
        n,
        networks: total,
        property_counts,
        chain_violations: chunk.chain_violations,
        graphs: aggs.len(),
        graph_property_counts,
        nonseparating_networks,
        nonseparating_graphs,
        theorems,
        counterexamples,
        detail,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynamics::classify;
    use crate::graph::interaction_graph;

    #[test]
    fn one_component() {
        let r = census(1, &Budgets::default(), DetailLevel::Graphs).unwrap();
        assert_eq!(r.networks, 4);
        assert_eq!(r.nonseparating_networks, 0);
        assert!(r.is_clean());
        let d = r.detail.unwrap();
        assert_eq!(d.iter().map(|s| s.networks).sum::<u64>(), 4);
    }

    #[test]
    fn index_layout() {
        let f = census_network(2, 0b1010_1100);
        assert_eq!(f.table(0)[0] & 0xf, 0b1100);
        assert_eq!(f.table(1)[0] & 0xf, 0b1010);
    }

    #[test]
    fn aggregates_match_direct_classification_at_two() {
        let aggs = census_aggregates(2);
        assert_eq!(aggs.values().map(|a| a.networks).sum::<u64>(), 1 << 8);
        for idx in 0..256u32 {
            let f = census_network(2, idx);
            let agg = &aggs[&interaction_graph(&f).code()];
            let flags = classify(&f).flags;
            for (k, p) in Property::ALL.into_iter().enumerate() {
                if !flags.get(p) {
                    assert!(agg.first_violator[k].unwrap() <= idx);
                }
            }
        }
    }
}
