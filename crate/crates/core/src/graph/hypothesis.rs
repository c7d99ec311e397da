//! Structural conditions on a signed digraph that guarantee a dynamical
//! property for every network on it.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::feedback::{has_linear_cut, subsets_of_size};
use super::{
    cycles::split_by_sign, enumerate_cycles, is_embedded, Motif, GraphError, SignedCycle,
    SignedDigraph, VertexMask,
};
use crate::dynamics::Property;

/// Known results of the form "structural condition on G implies property P
/// for every network on G", plus one necessary condition
/// ([`Theorem::OscillationNeedsDisjointCycles`]).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Theorem {
    /// No cycle: converging and fixing.
    Acyclic,
    /// No positive cycle: converging.
    NoPositiveCycle,
    /// No negative cycle: fixing.
    NoNegativeCycle,
    /// Linear cut: trapping.
    LinearCut,
    /// No two intersecting cycles of opposite signs: separating.
    NoIntersectingOppositeCycles,
    /// No path from a negative cycle to a positive cycle: trap-separating.
    NoNegativeToPositivePath,
    /// Positive feedback number at most one: separating.
    PositiveFeedbackAtMostOne,
    /// A unique positive cycle met by every negative cycle: trap-separating.
    UniquePositiveCycle,
    /// The same, on a strong graph with a negative cycle: converging.
    UniquePositiveCycleStrong,
    /// At most one negative cycle: separating.
    AtMostOneNegativeCycle,
    /// At most one negative cycle on a strong graph: trapping.
    AtMostOneNegativeCycleStrong,
    /// Strong, a unique negative cycle meeting every cycle, and some
    /// positive cycle: fixing.
    UniqueNegativeCycleStrong,
    /// Feedback number two without an embedded `H2`: separating.
    FeedbackTwoWithoutH2,
    /// If some network on G is trap-separating with several attractors,
    /// one of them cyclic, then G has vertex-disjoint cycles of both signs.
    OscillationNeedsDisjointCycles,
}

impl Theorem {
    pub const ALL: [Theorem; 14] = [
        Theorem::Acyclic,
        Theorem::NoPositiveCycle,
        Theorem::NoNegativeCycle,
        Theorem::LinearCut,
        Theorem::NoIntersectingOppositeCycles,
        Theorem::NoNegativeToPositivePath,
        Theorem::PositiveFeedbackAtMostOne,
        Theorem::UniquePositiveCycle,
        Theorem::UniquePositiveCycleStrong,
        Theorem::AtMostOneNegativeCycle,
        Theorem::AtMostOneNegativeCycleStrong,
        Theorem::UniqueNegativeCycleStrong,
        Theorem::FeedbackTwoWithoutH2,
        Theorem::OscillationNeedsDisjointCycles,
    ];

    pub fn id(self) -> &'static str {
        match self {
            Theorem::Acyclic => "acyclic",
            Theorem::NoPositiveCycle => "no-positive-cycle",
            Theorem::NoNegativeCycle => "no-negative-cycle",
            Theorem::LinearCut => "linear-cut",
            Theorem::NoIntersectingOppositeCycles => "no-intersecting-opposite-cycles",
            Theorem::NoNegativeToPositivePath => "no-negative-to-positive-path",
            Theorem::PositiveFeedbackAtMostOne => "positive-feedback-at-most-one",
            Theorem::UniquePositiveCycle => "unique-positive-cycle",
            Theorem::UniquePositiveCycleStrong => "unique-positive-cycle-strong",
            Theorem::AtMostOneNegativeCycle => "at-most-one-negative-cycle",
            Theorem::AtMostOneNegativeCycleStrong => "at-most-one-negative-cycle-strong",
            Theorem::UniqueNegativeCycleStrong => "unique-negative-cycle-strong",
            Theorem::FeedbackTwoWithoutH2 => "feedback-two-without-h2",
            Theorem::OscillationNeedsDisjointCycles => "oscillation-needs-disjoint-cycles",
        }
    }

    pub fn from_id(id: &str) -> Option<Theorem> {
        Theorem::ALL.into_iter().find(|t| t.id() == id)
    }

    /// Properties every network on a graph satisfying the condition has.
    /// Empty for the necessary-condition result.
    pub fn conclusion(self) -> &'static [Property] {
        use Property::*;
        match self {
            Theorem::Acyclic => &[Converging, Fixing],
            Theorem::NoPositiveCycle => &[Converging],
            Theorem::NoNegativeCycle => &[Fixing],
            Theorem::LinearCut => &[Trapping],
            Theorem::NoIntersectingOppositeCycles => &[Separating],
            Theorem::NoNegativeToPositivePath => &[TrapSeparating],
            Theorem::PositiveFeedbackAtMostOne => &[Separating],
            Theorem::UniquePositiveCycle => &[TrapSeparating],
            Theorem::UniquePositiveCycleStrong => &[Converging],
            Theorem::AtMostOneNegativeCycle => &[Separating],
            Theorem::AtMostOneNegativeCycleStrong => &[Trapping],
            Theorem::UniqueNegativeCycleStrong => &[Fixing],
            Theorem::FeedbackTwoWithoutH2 => &[Separating],
            Theorem::OscillationNeedsDisjointCycles => &[],
        }
    }
}

impl std::fmt::Display for Theorem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.id())
    }
}

/// Everything the structural results need to know about one graph.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct HypothesisReport {
    pub strong: bool,
    pub arcs: usize,
    pub cycles: usize,
    pub positive_cycles: usize,
    pub negative_cycles: usize,
    pub feedback_number: usize,
    pub positive_feedback_number: usize,
    pub negative_feedback_number: usize,
    pub linear_cut: bool,
    /// Evaluated only when the feedback number is two.
    pub h2_embedded: Option<bool>,
    /// A positive and a negative cycle share no vertex.
    pub disjoint_opposite_cycles: bool,
    /// Whether each condition holds (for the necessary condition: whether
    /// its structural conclusion holds).
    pub holds: BTreeMap<Theorem, bool>,
    /// Properties guaranteed by some holding condition, closed under the
    /// implications between properties.
    pub predicted: Vec<Property>,
}

impl HypothesisReport {
    pub fn holds(&self, t: Theorem) -> bool {
        self.holds.get(&t).copied().unwrap_or(false)
    }

    pub fn predicts(&self, p: Property) -> bool {
        self.predicted.contains(&p)
    }
}

/// Minimum number of vertices meeting every mask.
pub(crate) fn min_hitting_set(n: usize, masks: &BTreeSet<VertexMask>) -> usize {
    if masks.is_empty() {
        return 0;
    }
    for k in 1..=n {
        if subsets_of_size(n, k).any(|s| masks.iter().all(|m| m & s != 0)) {
            return k;
        }
    }
    n
}

/// Evaluates every structural condition from one cycle enumeration. The
/// embedding search runs only when the feedback number is two.
pub fn hyp_evaluate(
    g: &SignedDigraph,
    cap: usize,
    search_budget: u64,
) -> Result<HypothesisReport, GraphError> {
    let cycles = enumerate_cycles(g, cap)?;
    evaluate_with_cycles(g, &cycles, search_budget)
}

pub(crate) fn evaluate_with_cycles(
    g: &SignedDigraph,
    cycles: &[SignedCycle],
    search_budget: u64,
) -> Result<HypothesisReport, GraphError> {
    let n = g.n();
    let strong = g.is_strong();
    let (pos_mask, neg_mask) = split_by_sign(cycles);
    let pos: Vec<&SignedCycle> = cycles.iter().filter(|c| c.is_positive()).collect();
    let neg: Vec<&SignedCycle> = cycles.iter().filter(|c| !c.is_positive()).collect();
    let pos_sets: BTreeSet<VertexMask> = pos.iter().map(|c| c.vertex_mask()).collect();
    let neg_sets: BTreeSet<VertexMask> = neg.iter().map(|c| c.vertex_mask()).collect();
    let all_sets: BTreeSet<VertexMask> = pos_sets.union(&neg_sets).copied().collect();

    let feedback_number = min_hitting_set(n, &all_sets);
    let positive_feedback_number = min_hitting_set(n, &pos_sets);
    let negative_feedback_number = min_hitting_set(n, &neg_sets);
    let linear_cut = has_linear_cut(g);
    let disjoint_opposite_cycles = pos_sets
        .iter()
        .any(|p| neg_sets.iter().any(|q| p & q == 0));

    let unique_pos_met = pos.len() == 1 && {
        let c = pos[0].vertex_mask();
        neg_sets.iter().all(|m| m & c != 0)
    };
    let unique_neg_meets_all = neg.len() == 1 && {
        let c = neg[0].vertex_mask();
        all_sets.iter().all(|m| m & c != 0)
    };
    let h2_embedded = if feedback_number == 2 {
        Some(is_embedded(&Motif::h2().graph, g, search_budget)?.is_some())
    } else {
        None
    };

    let mut holds = BTreeMap::new();
    holds.insert(Theorem::Acyclic, cycles.is_empty());
    holds.insert(Theorem::NoPositiveCycle, pos.is_empty());
    holds.insert(Theorem::NoNegativeCycle, neg.is_empty());
    holds.insert(Theorem::LinearCut, linear_cut);
    holds.insert(Theorem::NoIntersectingOppositeCycles, pos_mask & neg_mask == 0);
    holds.insert(
        Theorem::NoNegativeToPositivePath,
        g.reachable_from(neg_mask) & pos_mask == 0,
    );
    holds.insert(Theorem::PositiveFeedbackAtMostOne, positive_feedback_number <= 1);
    holds.insert(Theorem::UniquePositiveCycle, unique_pos_met);
    holds.insert(
        Theorem::UniquePositiveCycleStrong,
        unique_pos_met && strong && !neg.is_empty(),
    );
    holds.insert(Theorem::AtMostOneNegativeCycle, neg.len() <= 1);
    holds.insert(Theorem::AtMostOneNegativeCycleStrong, strong && neg.len() <= 1);
    holds.insert(
        Theorem::UniqueNegativeCycleStrong,
        strong && unique_neg_meets_all && !pos.is_empty(),
    );
    holds.insert(
        Theorem::FeedbackTwoWithoutH2,
        feedback_number == 2 && h2_embedded == Some(false),
    );
    holds.insert(Theorem::OscillationNeedsDisjointCycles, disjoint_opposite_cycles);

    let mut predicted: BTreeSet<Property> = BTreeSet::new();
    for (t, ok) in &holds {
        if *ok {
            predicted.extend(t.conclusion().iter().copied());
        }
    }
    let predicted = Property::closure(predicted);

    Ok(HypothesisReport {
        strong,
        arcs: g.arc_count(),
        cycles: cycles.len(),
        positive_cycles: pos.len(),
        negative_cycles: neg.len(),
        feedback_number,
        positive_feedback_number,
        negative_feedback_number,
        linear_cut,
        h2_embedded,
        disjoint_opposite_cycles,
        holds,
        predicted,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{feedback_number, FeedbackVariant, Sign, SignSet};

    #[test]
    fn ids_roundtrip() {
        for t in Theorem::ALL {
            assert_eq!(Theorem::from_id(t.id()), Some(t));
            let json = serde_json::to_string(&t).unwrap();
            assert_eq!(json, format!("\"{}\"", t.id()));
        }
    }

    #[test]
    fn acyclic_graph_predicts_converging_and_fixing() {
        let g = SignedDigraph::from_arcs(3, &[(0, 1, Sign::Pos), (1, 2, Sign::Neg)]);
        let r = hyp_evaluate(&g, 100, 1000).unwrap();
        assert!(r.holds(Theorem::Acyclic));
        for p in Property::ALL {
            assert!(r.predicts(p), "{p:?}");
        }
    }

    #[test]
    fn k2pm_predicts_nothing() {
        let mut g = SignedDigraph::new(2);
        for j in 0..2 {
            for i in 0..2 {
                g.set_signs(j, i, SignSet::BOTH);
            }
        }
        let r = hyp_evaluate(&g, 100, 1000).unwrap();
        assert!(r.predicted.is_empty());
        assert_eq!(r.cycles, 8);
        assert_eq!(r.feedback_number, 2);
        assert_eq!(r.h2_embedded, Some(true));
        assert!(r.disjoint_opposite_cycles);
    }

    #[test]
    fn hitting_sets_match_structural_feedback_numbers() {
        let g = Motif::h2().graph;
        let r = hyp_evaluate(&g, 100, 1000).unwrap();
        assert_eq!(
            r.feedback_number,
            feedback_number(&g, FeedbackVariant::All, 100).unwrap()
        );
        assert_eq!(
            r.positive_feedback_number,
            feedback_number(&g, FeedbackVariant::Positive, 100).unwrap()
        );
        assert_eq!(
            r.negative_feedback_number,
            feedback_number(&g, FeedbackVariant::Negative, 100).unwrap()
        );
        assert_eq!(r.negative_feedback_number, 1);
    }
}
