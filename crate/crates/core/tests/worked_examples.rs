use bnsep::dynamics::AsyncGraph;
use bnsep::ensemble::{
    enumerate_f, examine_graph, graph_classify, Conjecture, GraphOutcome, robust_falsify, verify_theorem, Budgets, RobustOptions,
    VerificationResult,
};
use bnsep::fixtures::*;
use bnsep::graph::{
    enumerate_cycles, feedback_number, hyp_evaluate, is_embedded, validate_embedding,
    FeedbackVariant, Motif, Theorem, DEFAULT_CYCLE_CAP, DEFAULT_SEARCH_BUDGET,
};
use bnsep::network::{config, StateSet, Subspace};
use bnsep::{
    classify, interaction_graph, load_network, union_attractors, BooleanNetwork, Property,
    SignedDigraph,
};

fn state(label: &str) -> u32 {
    config(label).bits()
}

fn has_arc(f: &BooleanNetwork, from: &str, to: &str) -> bool {
    let x = state(from);
    let y = state(to);
    AsyncGraph::new(f).successors(x).iter().any(|&(_, z)| z == y)
}

#[test]
fn network_fixtures_reproduce_their_verdicts() {
    for fx in NETWORKS {
        let c = classify(&fx.network());
        for &(p, want) in fx.expected {
            assert_eq!(c.has(p), want, "{}: {p:?}", fx.name);
        }
        let report = c.report();
        for want in fx.attractors {
            let mut want: Vec<String> = want.iter().map(|s| s.to_string()).collect();
            want.sort();
            assert!(
                report.attractors.iter().any(|a| {
                    let mut got = a.states.clone();
                    got.sort();
                    got == want
                }),
                "{}: attractor {want:?} missing",
                fx.name
            );
        }
        for pattern in fx.subspaces {
            let s = Subspace::from_pattern(pattern).unwrap();
            assert!(
                c.attractors.iter().any(|a| a.subspace == s),
                "{}: subspace {pattern} missing",
                fx.name
            );
        }
    }
}

#[test]
fn graph_fixtures_reproduce_their_verdicts() {
    for fx in GRAPHS {
        let v = graph_classify(&fx.graph(), &Budgets::default()).unwrap();
        assert_eq!(v.networks as usize, fx.network_count, "{}", fx.name);
        for &(p, want) in fx.expected {
            assert_eq!(v.holds(p), want, "{}: {p:?}", fx.name);
            if !want {
                let w = load_network(v.witness(p).unwrap(), 8).unwrap();
                assert!(!classify(&w).has(p));
                assert_eq!(interaction_graph(&w), fx.graph());
            }
        }
    }
}

#[test]
fn empty_ensemble_is_a_component_of_a_fixture() {
    let g = interaction_graph(&NON_SEPARATING_TWO_COMPONENTS.network());
    assert_eq!(g.strong_components().len(), 2);
    assert_eq!(g.induced(&[1, 2]), EMPTY_ENSEMBLE.graph());
    assert_eq!(enumerate_f(&EMPTY_ENSEMBLE.graph(), &Budgets::default()).unwrap().len(), 0);
}

#[test]
fn two_cyclic_attractors_details() {
    let f = TWO_CYCLIC_ATTRACTORS.network();
    let c = classify(&f);
    assert_eq!(c.attractors.len(), 2);
    assert!(c.attractors.iter().all(|a| a.len() > 1));
    assert!(has_arc(&f, "00001", "00000"));
    assert!(has_arc(&f, "10100", "10101"));
    for a in &c.attractors {
        assert_eq!(a.trap_space, Subspace::whole(5));
    }
}

#[test]
fn converging_not_trapping_details() {
    let f = CONVERGING_NOT_TRAPPING.network();
    let g = AsyncGraph::new(&f);
    // the arc leaving [A] starts at 1110; 1010 only moves along x1
    assert_eq!(g.successors(state("1010")), vec![(0, state("0010"))]);
    assert!(has_arc(&f, "1110", "1111"));
    let low = StateSet::from_subspace(&Subspace::from_pattern("***0").unwrap());
    assert!(!g.is_trap_set(&low));
    let a = &classify(&f).attractors[0];
    assert!(!a.states.contains(state("1110")));
    assert_eq!(a.trap_space, Subspace::whole(4));
}

#[test]
fn xor_pair_arcs() {
    let f = XOR_PAIR.network();
    let g = AsyncGraph::new(&f);
    assert_eq!(g.successors(state("11")), vec![(0, state("01")), (1, state("10"))]);
    let mut arcs: Vec<(String, String)> = g
        .arcs()
        .into_iter()
        .map(|(x, y)| (bnsep::network::state_label(2, x), bnsep::network::state_label(2, y)))
        .collect();
    arcs.sort();
    let want: Vec<(String, String)> = [("01", "11"), ("10", "11"), ("11", "01"), ("11", "10")]
        .iter()
        .map(|(a, b)| (a.to_string(), b.to_string()))
        .collect();
    assert_eq!(arcs, want);
}

#[test]
fn local_function_spaces() {
    let loop_pos = SignedDigraph::parse_sdg("vertices: 1\n1 -> 1 +\n").unwrap();
    let s = enumerate_f(&loop_pos, &Budgets::default()).unwrap();
    assert_eq!(s.len(), 1);
    assert_eq!(s.network(0), BooleanNetwork::identity(1));

    let k2 = K2_PM.graph();
    let nets: Vec<BooleanNetwork> = enumerate_f(&k2, &Budgets::default()).unwrap().iter().collect();
    assert_eq!(nets.len(), 4);
    for f in &nets {
        for i in 0..2 {
            let t = f.table(i)[0] & 0xf;
            assert!(t == 0b0110 || t == 0b1001, "xor or xnor expected");
        }
    }
}

#[test]
fn constant_input_graph_has_four_distinct_dynamics() {
    let g = CONSTANT_INPUT_XOR_TARGET.graph();
    let nets: Vec<BooleanNetwork> = enumerate_f(&g, &Budgets::default()).unwrap().iter().collect();
    assert_eq!(nets.len(), 4);
    let arc_sets: std::collections::BTreeSet<Vec<(u32, u32)>> =
        nets.iter().map(|f| AsyncGraph::new(f).arcs()).collect();
    assert_eq!(arc_sets.len(), 4);
}

#[test]
fn verify_theorem_examples() {
    let b = Budgets::default();
    let g33 = interaction_graph(&SEPARATING_NOT_TRAP_SEPARATING.network());
    assert!(matches!(
        verify_theorem(&g33, Theorem::AtMostOneNegativeCycle, &b).unwrap(),
        VerificationResult::Verified { .. }
    ));
    let g34 = interaction_graph(&CONVERGING_NOT_TRAPPING.network());
    assert!(matches!(
        verify_theorem(&g34, Theorem::NoNegativeToPositivePath, &b).unwrap(),
        VerificationResult::Verified { .. }
    ));
    let k2 = K2_PM.graph();
    assert_eq!(
        verify_theorem(&k2, Theorem::AtMostOneNegativeCycle, &b).unwrap(),
        VerificationResult::NotApplicable
    );
}

#[test]
fn feedback_three_graph_does_not_meet_the_feedback_two_condition() {
    let g = interaction_graph(&FEEDBACK_THREE.network());
    assert_eq!(feedback_number(&g, FeedbackVariant::All, DEFAULT_CYCLE_CAP).unwrap(), 3);
    assert!(is_embedded(&Motif::h2().graph, &g, DEFAULT_SEARCH_BUDGET).unwrap().is_none());
    let v = graph_classify(&g, &Budgets::default()).unwrap();
    assert!(!v.holds(Property::Separating));
}

#[test]
fn h2_embedding_witness() {
    let g = interaction_graph(&H2_EMBEDDED.network());
    let h2 = Motif::h2().graph;
    let w = is_embedded(&h2, &g, DEFAULT_SEARCH_BUDGET).unwrap().unwrap();
    assert_eq!(w.phi, vec![0, 1]);
    assert!(validate_embedding(&h2, &g, &w));
}

#[test]
fn strong_feedback_three_numbers() {
    let g = interaction_graph(&STRONG_FEEDBACK_THREE.network());
    assert!(g.is_strong());
    assert_eq!(feedback_number(&g, FeedbackVariant::All, DEFAULT_CYCLE_CAP).unwrap(), 3);
    assert_eq!(feedback_number(&g, FeedbackVariant::Positive, DEFAULT_CYCLE_CAP).unwrap(), 2);
}

#[test]
fn decomposition_of_a_two_component_example() {
    let f = NON_SEPARATING_TWO_COMPONENTS.network();
    let r = bnsep::dynamics::check_decomposition(&f, 0b001, 0b110).unwrap();
    assert!(r.all_passed());
    let g = NON_SEPARATING_NEGATIVE_INPUT.network();
    assert!(matches!(
        bnsep::dynamics::check_decomposition(&g, 0b0111, 0b1000),
        Err(bnsep::dynamics::DecompositionError::PreconditionFailed { from: 4, to: 3 })
    ));
}

#[test]
fn robust_pair_union_is_not_separating() {
    let f = load_network(ROBUST_PAIR[0], 8).unwrap();
    let g = load_network(ROBUST_PAIR[1], 8).unwrap();
    assert!(classify(&f).has(Property::Separating));
    assert!(classify(&g).has(Property::Separating));
    assert!(!union_attractors(&[&f, &g]).unwrap().has(Property::Separating));
    let host = interaction_graph(&NON_SEPARATING_NEGATIVE_INPUT.network()).induced(&[0, 1, 2]);
    assert!(interaction_graph(&f).is_subgraph_of(&host));
    assert!(interaction_graph(&g).is_subgraph_of(&host));
}

#[test]
fn robust_falsifier_finds_a_non_separating_family() {
    let host = interaction_graph(&NON_SEPARATING_NEGATIVE_INPUT.network()).induced(&[0, 1, 2]);
    let mut opts = RobustOptions::new(Property::Separating, 3);
    opts.exhaustive_limit = 2400;
    let r = robust_falsify(&host, &opts, &Budgets::default()).unwrap();
    assert!(r.pool_size <= 2400);
    let fam = r.counterexample.expect("a family is found");
    let nets: Vec<BooleanNetwork> = fam.iter().map(|s| load_network(s, 8).unwrap()).collect();
    let refs: Vec<&BooleanNetwork> = nets.iter().collect();
    assert!(!union_attractors(&refs).unwrap().has(Property::Separating));
    for f in &nets {
        assert!(interaction_graph(f).is_subgraph_of(&host));
    }
}

#[test]
fn robust_falsifier_is_quiet_where_robustness_is_known() {
    // strong, all arcs positive: robustly trapping
    let ring = SignedDigraph::parse_sdg("vertices: 3\n1 -> 2 +\n2 -> 3 +\n3 -> 1 +\n1 -> 1 +\n").unwrap();
    let r = robust_falsify(&ring, &RobustOptions::new(Property::Trapping, 1), &Budgets::default()).unwrap();
    assert!(r.counterexample.is_none());
    // all cycles negative: robustly converging
    let neg = SignedDigraph::parse_sdg("vertices: 3\n1 -> 2 +\n2 -> 3 +\n3 -> 1 -\n2 -> 2 -\n").unwrap();
    let r = robust_falsify(&neg, &RobustOptions::new(Property::Converging, 1), &Budgets::default()).unwrap();
    assert!(r.counterexample.is_none());
}

fn cycle_profile(g: &SignedDigraph) -> (usize, usize, usize) {
    let cycles = enumerate_cycles(g, DEFAULT_CYCLE_CAP).unwrap();
    let pos = cycles.iter().filter(|c| c.is_positive()).count();
    (cycles.len(), pos, cycles.len() - pos)
}

#[test]
fn stretched_h2_family_structure_and_dynamics() {
    for n in 3..=8 {
        let f = stretched_h2(n);
        let g = interaction_graph(&f);
        assert!(g.is_strong(), "n={n}");
        assert_eq!(g.arc_count(), n + 5, "n={n}");
        assert_eq!(cycle_profile(&g), (7, 4, 3), "n={n}");

        // the only fixed point is 0
        assert_eq!(f.fixed_points(), vec![0]);
        let ag = AsyncGraph::new(&f);
        // T = {x1 = 1 or x2 = 1} is a trap set
        let t = StateSet::from_states(n, (0..1u32 << n).filter(|x| x & 0b11 != 0));
        assert!(ag.is_trap_set(&t));
        // the all-ones state is reachable from every state of T
        let ones = (1u32 << n) - 1;
        let back = backward_reach(&ag, n, ones);
        assert!(t.iter().all(|x| back.contains(x)));
        // ones -> e2 along directions 1, 3, 4, .., n and e2 -> e1 along 1, 2
        let mut dirs = vec![0];
        dirs.extend(2..n);
        assert_eq!(follow(&ag, ones, &dirs), Some(0b10));
        assert_eq!(follow(&ag, 0b10, &[0, 1]), Some(0b01));
        // hence the attractor holding ones also holds e1 and e2, and [A] is everything
        let c = classify(&f);
        let a = c.attractors.iter().find(|a| a.states.contains(ones)).unwrap();
        assert!(a.states.contains(0b01) && a.states.contains(0b10));
        assert_eq!(a.subspace, Subspace::whole(n));
        assert!(!c.has(Property::Separating));

        if n <= 4 {
            let v = graph_classify(&g, &Budgets::default()).unwrap();
            assert!(!v.holds(Property::Separating));
        }
    }
}

#[test]
fn ring_with_switch_family_structure_and_dynamics() {
    for n in 4..=8 {
        let f = ring_with_switch(n);
        let g = interaction_graph(&f);
        assert!(g.is_strong(), "n={n}");
        // a ring of n - 1 arcs, four arcs at n and its loop: n + 4 in all
        assert_eq!(g.arc_count(), n + 4, "n={n}");
        assert_eq!(cycle_profile(&g), (5, 2, 3), "n={n}");
        let hyp = hyp_evaluate(&g, DEFAULT_CYCLE_CAP, DEFAULT_SEARCH_BUDGET).unwrap();
        assert_eq!(hyp.feedback_number, 2);
        assert_eq!(hyp.h2_embedded, Some(false));
        let rest = g.remove_vertices(1 | 1 << (n - 1));
        assert!(rest.is_acyclic());

        let en = 1u32 << (n - 1);
        assert!(f.is_fixed_point(en));
        // A = {sum_{i<=k} e_i, u + sum_{i<=k} e_i : k = 1..n-1}, u = ones on x1..x(n-1)
        let u = en - 1;
        let mut want = Vec::new();
        for k in 1..n {
            let s = (1u32 << k) - 1;
            want.push(s);
            want.push(u ^ s);
        }
        let want = StateSet::from_states(n, want);
        let c = classify(&f);
        assert!(c.attractors.iter().any(|a| a.states == want), "n={n}");
        let a = c.attractors.iter().find(|a| a.states == want).unwrap();
        assert_eq!(a.subspace, Subspace::new(n, en, 0).unwrap());
        assert!(AsyncGraph::new(&f).successors(0b101).contains(&(n - 1, 0b101 | en)));
        assert_eq!(a.trap_space, Subspace::whole(n));
        assert!(c.has(Property::Separating));
        assert!(!c.has(Property::TrapSeparating));
    }
}

#[test]
fn ring_with_switch_graph_is_below_the_conjectured_arc_bound() {
    for n in 4..=5 {
        let g = interaction_graph(&ring_with_switch(n));
        let v = graph_classify(&g, &Budgets::default()).unwrap();
        assert!(v.holds(Property::Separating));
        assert!(!v.holds(Property::TrapSeparating));
        let out = examine_graph(Conjecture::SeparatingNotTrapSeparatingSize, &g, &Budgets::default(), 1000);
        match out {
            GraphOutcome::Violation(v) => assert!(v.reason.contains("arcs < n + 5"), "{}", v.reason),
            other => panic!("expected a violation, got {other:?}"),
        }
    }
}

fn backward_reach(g: &AsyncGraph<'_>, n: usize, target: u32) -> StateSet {
    let mut preds: Vec<Vec<u32>> = vec![Vec::new(); 1 << n];
    for (x, y) in g.arcs() {
        preds[y as usize].push(x);
    }
    let mut seen = StateSet::empty(n);
    seen.insert(target);
    let mut stack = vec![target];
    while let Some(y) = stack.pop() {
        for &x in &preds[y as usize] {
            if seen.insert(x) {
                stack.push(x);
            }
        }
    }
    seen
}

fn follow(g: &AsyncGraph<'_>, start: u32, dirs: &[usize]) -> Option<u32> {
    let mut x = start;
    for &i in dirs {
        x = g.successors(x).into_iter().find(|&(c, _)| c == i)?.1;
    }
    Some(x)
}
