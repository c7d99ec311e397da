//! Counterexample search for open structural conjectures on non-separating
//! and on separating but not trap-separating graphs.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::census::{census_aggregates, census_network, GraphAggregate, CENSUS_MAX_N};
use super::fast::small_flags;
use super::{enumerate_f, pick_signs, Budgets, EnsembleError};
use crate::dynamics::{classify, Flags, Property};
use crate::graph::{
    enumerate_cycles, evaluate_with_cycles, HypothesisReport, SignedCycle, SignedDigraph,
};
use crate::network::BooleanNetwork;

/// The conjectures and probes the search understands.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Conjecture {
    /// Non-separating graphs have disjoint cycles of opposite signs and a
    /// positive cycle whose every vertex lies on a negative cycle.
    NonSeparatingCycles,
    /// Strong non-separating graphs with `n ≥ 3` have at least `n + 5` arcs
    /// and 7 cycles, at least 4 positive and 3 negative.
    NonSeparatingSize,
    /// Strong graphs with `n ≥ 4` that are separating but not
    /// trap-separating have at least `n + 5` arcs and 5 cycles, at least 2
    /// positive and 3 negative.
    SeparatingNotTrapSeparatingSize,
    /// Probe of an open question: strong graphs with a unique positive cycle
    /// are trap-separating.
    UniquePositiveCycleTrapSeparating,
}

impl Conjecture {
    pub const ALL: [Conjecture; 4] = [
        Conjecture::NonSeparatingCycles,
        Conjecture::NonSeparatingSize,
        Conjecture::SeparatingNotTrapSeparatingSize,
        Conjecture::UniquePositiveCycleTrapSeparating,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Conjecture::NonSeparatingCycles => "non-separating-cycles",
            Conjecture::NonSeparatingSize => "non-separating-size",
            Conjecture::SeparatingNotTrapSeparatingSize => "separating-not-trap-separating-size",
            Conjecture::UniquePositiveCycleTrapSeparating => "unique-positive-cycle-trap-separating",
        }
    }

    /// Short alias used on the command line.
    pub fn alias(self) -> Option<&'static str> {
        match self {
            Conjecture::NonSeparatingCycles => Some("C1"),
            Conjecture::NonSeparatingSize => Some("C2"),
            Conjecture::SeparatingNotTrapSeparatingSize => Some("C3"),
            Conjecture::UniquePositiveCycleTrapSeparating => None,
        }
    }

    fn min_n(self) -> usize {
        match self {
            Conjecture::NonSeparatingCycles | Conjecture::UniquePositiveCycleTrapSeparating => 0,
            Conjecture::NonSeparatingSize => 3,
            Conjecture::SeparatingNotTrapSeparatingSize => 4,
        }
    }

    fn needs_strong(self) -> bool {
        self != Conjecture::NonSeparatingCycles
    }
}

impl fmt::Display for Conjecture {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for Conjecture {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Conjecture::ALL
            .into_iter()
            .find(|c| c.id() == s || c.alias().is_some_and(|a| a.eq_ignore_ascii_case(s)))
            .ok_or_else(|| format!("unknown conjecture `{s}`"))
    }
}

/// Relative weights of the four sign sets of an ordered pair.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SignWeights {
    pub none: f64,
    pub positive: f64,
    pub negative: f64,
    pub both: f64,
}

impl Default for SignWeights {
    fn default() -> Self {
        SignWeights {
            none: 1.0,
            positive: 1.0,
            negative: 1.0,
            both: 1.0,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "kebab-case")]
pub enum SearchMode {
    /// Every signed digraph on `n ≤ 3` vertices, decided exactly.
    Exhaustive,
    /// Independent random graphs; `network_budget` caps `|F(G)|` per graph.
    Random {
        seed: u64,
        samples: u64,
        weights: SignWeights,
        network_budget: u64,
    },
}

impl SearchMode {
    pub fn random(seed: u64, samples: u64) -> Self {
        SearchMode::Random {
            seed,
            samples,
            weights: SignWeights::default(),
            network_budget: 20_000,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjectureViolation {
    pub graph: String,
    /// The clause of the conclusion that fails.
    pub reason: String,
    /// A network on the graph witnessing the hypothesis, as `.bn` text.
    pub witness: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchReport {
    pub conjecture: Conjecture,
    pub n: usize,
    pub mode: SearchMode,
    /// Graphs looked at: all graphs with `F(G)` non-empty in exhaustive
    /// mode, all samples in random mode.
    pub graphs: u64,
    /// Exhaustive mode only: graphs with `F(G)` empty, for which every
    /// property holds vacuously.
    pub empty_ensembles: u64,
    /// Rejected by size or strong connectivity.
    pub filtered: u64,
    /// The structural conclusion already holds.
    pub conclusion_holds: u64,
    /// A known result rules the hypothesis out.
    pub excluded_by_theorem: u64,
    /// Decided by looking at `F(G)`, hypothesis false.
    pub hypothesis_fails: u64,
    /// Budget exceeded before a decision.
    pub undecided: u64,
    pub violations: Vec<ConjectureViolation>,
}

impl SearchReport {
    fn new(conjecture: Conjecture, n: usize, mode: SearchMode) -> Self {
        SearchReport {
            conjecture,
            n,
            mode,
            graphs: 0,
            empty_ensembles: 0,
            filtered: 0,
            conclusion_holds: 0,
            excluded_by_theorem: 0,
            hypothesis_fails: 0,
            undecided: 0,
            violations: Vec::new(),
        }
    }

    fn record(&mut self, outcome: GraphOutcome) {
        self.graphs += 1;
        match outcome {
            GraphOutcome::Filtered => self.filtered += 1,
            GraphOutcome::ConclusionHolds => self.conclusion_holds += 1,
            GraphOutcome::Excluded => self.excluded_by_theorem += 1,
            GraphOutcome::HypothesisFails => self.hypothesis_fails += 1,
            GraphOutcome::Undecided => self.undecided += 1,
            GraphOutcome::Violation(v) => self.violations.push(v),
        }
    }
}

/// What happened to one graph in a search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "outcome", rename_all = "kebab-case")]
pub enum GraphOutcome {
    Filtered,
    ConclusionHolds,
    Excluded,
    HypothesisFails,
    Undecided,
    Violation(ConjectureViolation),
}

/// Why the structural conclusion fails, if it does. `None` for the probe,
/// whose conclusion is dynamical.
fn structural_failure(
    conj: Conjecture,
    g: &SignedDigraph,
    cycles: &[SignedCycle],
    hyp: &HypothesisReport,
) -> Option<Option<String>> {
    let n = g.n();
    let size = |arcs: usize, total: usize, pos: usize, neg: usize| {
        let mut missing = Vec::new();
        if hyp.arcs < n + arcs {
            missing.push(format!("{} arcs < n + {arcs}", hyp.arcs));
        }
        if hyp.cycles < total {
            missing.push(format!("{} cycles < {total}", hyp.cycles));
        }
        if hyp.positive_cycles < pos {
            missing.push(format!("{} positive cycles < {pos}", hyp.positive_cycles));
        }
        if hyp.negative_cycles < neg {
            missing.push(format!("{} negative cycles < {neg}", hyp.negative_cycles));
        }
        (!missing.is_empty()).then(|| missing.join("; "))
    };
    match conj {
        Conjecture::NonSeparatingCycles => {
            let neg_mask = cycles
                .iter()
                .filter(|c| !c.is_positive())
                .fold(0, |m, c| m | c.vertex_mask());
            let covered = cycles
                .iter()
                .any(|c| c.is_positive() && c.vertex_mask() & !neg_mask == 0);
            let mut missing = Vec::new();
            if !hyp.disjoint_opposite_cycles {
                missing.push("no disjoint cycles of opposite signs".to_string());
            }
            if !covered {
                missing.push("no positive cycle covered by negative cycles".to_string());
            }
            Some((!missing.is_empty()).then(|| missing.join("; ")))
        }
        Conjecture::NonSeparatingSize => Some(size(5, 7, 4, 3)),
        Conjecture::SeparatingNotTrapSeparatingSize => Some(size(5, 5, 2, 3)),
        Conjecture::UniquePositiveCycleTrapSeparating => None,
    }
}

fn passes_filter(conj: Conjecture, g: &SignedDigraph, hyp_strong: bool) -> bool {
    g.n() >= conj.min_n()
        && (!conj.needs_strong() || hyp_strong)
        && (conj != Conjecture::UniquePositiveCycleTrapSeparating || g.n() > 0)
}

fn excluded(conj: Conjecture, hyp: &HypothesisReport) -> bool {
    match conj {
        Conjecture::NonSeparatingCycles | Conjecture::NonSeparatingSize => {
            hyp.predicts(Property::Separating)
        }
        Conjecture::SeparatingNotTrapSeparatingSize
        | Conjecture::UniquePositiveCycleTrapSeparating => hyp.predicts(Property::TrapSeparating),
    }
}

/// Decision on the dynamical hypothesis: `Ok(Some(w))` holds with witness
/// `w`, `Ok(None)` fails, `Err(())` undecided.
type Decision = Result<Option<String>, ()>;

fn decide_from_aggregate(conj: Conjecture, n: usize, agg: &GraphAggregate) -> Decision {
    let viol = |p: Property| {
        let k = Property::ALL.iter().position(|&q| q == p).unwrap();
        agg.first_violator[k]
    };
    let bn = |idx: u32| census_network(n, idx).to_bn_text();
    Ok(match conj {
        Conjecture::NonSeparatingCycles | Conjecture::NonSeparatingSize => {
            viol(Property::Separating).map(bn)
        }
        Conjecture::SeparatingNotTrapSeparatingSize => match viol(Property::Separating) {
            Some(_) => None,
            None => viol(Property::TrapSeparating).map(bn),
        },
        Conjecture::UniquePositiveCycleTrapSeparating => viol(Property::TrapSeparating).map(bn),
    })
}

fn flags_of(f: &BooleanNetwork, scratch: &mut Vec<u64>) -> Flags {
    if f.n() <= 6 {
        let tables: Vec<u64> = (0..f.n()).map(|i| f.table(i)[0]).collect();
        small_flags(&tables, scratch)
    } else {
        classify(f).flags
    }
}

fn decide_by_enumeration(
    conj: Conjecture,
    g: &SignedDigraph,
    budgets: &Budgets,
    network_budget: u64,
) -> Decision {
    let local = Budgets {
        enum_budget: network_budget,
        ..*budgets
    };
    let space = enumerate_f(g, &local).map_err(|_| ())?;
    if space.len() > network_budget as u128 {
        return Err(());
    }
    let mut scratch = Vec::new();
    let mut non_trap_separating = None;
    for f in space.iter() {
        let flags = flags_of(&f, &mut scratch);
        match conj {
            Conjecture::NonSeparatingCycles | Conjecture::NonSeparatingSize => {
                if !flags.separating {
                    return Ok(Some(f.to_bn_text()));
                }
            }
            Conjecture::SeparatingNotTrapSeparatingSize => {
                if !flags.separating {
                    return Ok(None);
                }
                if !flags.trap_separating && non_trap_separating.is_none() {
                    non_trap_separating = Some(f.to_bn_text());
                }
            }
            Conjecture::UniquePositiveCycleTrapSeparating => {
                if !flags.trap_separating {
                    return Ok(Some(f.to_bn_text()));
                }
            }
        }
    }
    Ok(non_trap_separating)
}

fn examine<D>(conj: Conjecture, g: &SignedDigraph, budgets: &Budgets, decide: D) -> GraphOutcome
where
    D: FnOnce() -> Decision,
{
    let strong = g.is_strong();
    if !passes_filter(conj, g, strong) {
        return GraphOutcome::Filtered;
    }
    let Ok(cycles) = enumerate_cycles(g, budgets.cycle_cap) else {
        return GraphOutcome::Undecided;
    };
    if conj == Conjecture::UniquePositiveCycleTrapSeparating
        && cycles.iter().filter(|c| c.is_positive()).count() != 1
    {
        return GraphOutcome::Filtered;
    }
    let Ok(hyp) = evaluate_with_cycles(g, &cycles, budgets.search_budget) else {
        return GraphOutcome::Undecided;
    };
    let failure = match structural_failure(conj, g, &cycles, &hyp) {
        Some(None) => return GraphOutcome::ConclusionHolds,
        Some(Some(reason)) => reason,
        None => "some network on the graph is not trap-separating".to_string(),
    };
    if excluded(conj, &hyp) {
        return GraphOutcome::Excluded;
    }
    match decide() {
        Err(()) => GraphOutcome::Undecided,
        Ok(None) => GraphOutcome::HypothesisFails,
        Ok(Some(witness)) => GraphOutcome::Violation(ConjectureViolation {
            graph: g.encoding(),
            reason: failure,
            witness,
        }),
    }
}

/// Runs the search pipeline on one graph, deciding the dynamical hypothesis
/// by enumerating at most `network_budget` networks.
pub fn examine_graph(
    conj: Conjecture,
    g: &SignedDigraph,
    budgets: &Budgets,
    network_budget: u64,
) -> GraphOutcome {
    examine(conj, g, budgets, || decide_by_enumeration(conj, g, budgets, network_budget))
}

/// Exhaustive search over every graph on `n ≤ 3` vertices, reusing census
/// aggregates (see [`census_aggregates`]).
pub fn conjecture_search_with_aggregates(
    conj: Conjecture,
    n: usize,
    aggregates: &BTreeMap<u128, GraphAggregate>,
    budgets: &Budgets,
) -> SearchReport {
    let mut report = SearchReport::new(conj, n, SearchMode::Exhaustive);
    let entries: Vec<(&u128, &GraphAggregate)> = aggregates.iter().collect();
    let outcomes: Vec<GraphOutcome> = entries
        .par_iter()
        .map(|(code, agg)| {
            let g = SignedDigraph::from_code(n, **code);
            examine(conj, &g, budgets, || decide_from_aggregate(conj, n, agg))
        })
        .collect();
    for o in outcomes {
        report.record(o);
    }
    report.empty_ensembles = (1u64 << (2 * n * n)) - aggregates.len() as u64;
    report
}

/// A random signed digraph with independent sign sets per ordered pair.
pub fn random_graph<R: Rng>(n: usize, weights: &SignWeights, rng: &mut R) -> SignedDigraph {
    let mut g = SignedDigraph::new(n);
    for j in 0..n {
        for i in 0..n {
            g.set_signs(j, i, pick_signs(weights, rng.gen::<f64>()));
        }
    }
    g
}

/// Searches for counterexamples to `conj` among graphs on `n` vertices.
pub fn conjecture_search(
    conj: Conjecture,
    n: usize,
    mode: SearchMode,
    budgets: &Budgets,
) -> Result<SearchReport, EnsembleError> {
    match mode {
        SearchMode::Exhaustive => {
            if n > CENSUS_MAX_N {
                return Err(EnsembleError::TooManyComponents { n, max: CENSUS_MAX_N });
            }
            let aggs = census_aggregates(n);
            Ok(conjecture_search_with_aggregates(conj, n, &aggs, budgets))
        }
        SearchMode::Random {
            seed,
            samples,
            weights,
            network_budget,
        } => {
            if n > budgets.max_n {
                return Err(EnsembleError::TooManyComponents { n, max: budgets.max_n });
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let graphs: Vec<SignedDigraph> =
                (0..samples).map(|_| random_graph(n, &weights, &mut rng)).collect();
            let outcomes: Vec<GraphOutcome> = graphs
                .par_iter()
                .map(|g| {
                    examine(conj, g, budgets, || {
                        decide_by_enumeration(conj, g, budgets, network_budget)
                    })
                })
                .collect();
            let mut report = SearchReport::new(conj, n, mode);
            for o in outcomes {
                report.record(o);
            }
            Ok(report)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn aliases_parse() {
        assert_eq!("C1".parse::<Conjecture>().unwrap(), Conjecture::NonSeparatingCycles);
        assert_eq!("c3".parse::<Conjecture>().unwrap(), Conjecture::SeparatingNotTrapSeparatingSize);
        assert_eq!(
            "non-separating-size".parse::<Conjecture>().unwrap(),
            Conjecture::NonSeparatingSize
        );
        assert!("C9".parse::<Conjecture>().is_err());
    }

    #[test]
    fn two_vertex_sweep_is_clean() {
        for conj in Conjecture::ALL {
            let r = conjecture_search(conj, 2, SearchMode::Exhaustive, &Budgets::default()).unwrap();
            assert!(r.violations.is_empty(), "{conj}: {:?}", r.violations);
            assert_eq!(r.graphs + r.empty_ensembles, 1 << 8);
        }
    }

    #[test]
    fn random_mode_is_reproducible() {
        let mode = SearchMode::random(5, 200);
        let a = conjecture_search(Conjecture::NonSeparatingCycles, 3, mode, &Budgets::default()).unwrap();
        let b = conjecture_search(Conjecture::NonSeparatingCycles, 3, mode, &Budgets::default()).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.graphs, 200);
    }
}
