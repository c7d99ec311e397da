//! Independent oracles shared by the property tests and the acceptance run.
//! Everything here is brute force over the state space or over subsets.

#![allow(dead_code)]

use bnsep::graph::{has_positive_cycle, Sign, DEFAULT_CYCLE_CAP};
use bnsep::network::Subspace;
use bnsep::{interaction_graph, BooleanNetwork, SignedDigraph, StateSet};
use rand::seq::SliceRandom;
use rand::Rng;

pub fn valid_bits(n: usize) -> u64 {
    if n == 6 {
        u64::MAX
    } else {
        (1u64 << (1u32 << n)) - 1
    }
}

pub fn random_tables<R: Rng>(rng: &mut R, n: usize) -> Vec<u64> {
    (0..n).map(|_| rng.gen::<u64>() & valid_bits(n)).collect()
}

pub fn random_network<R: Rng>(rng: &mut R, n: usize) -> BooleanNetwork {
    BooleanNetwork::from_small_tables(&random_tables(rng, n))
}

/// A network whose interaction graph is acyclic: components are ranked by a
/// random permutation and each reads only strictly lower-ranked ones.
pub fn random_acyclic_network<R: Rng>(rng: &mut R, n: usize) -> BooleanNetwork {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut inputs = vec![0u32; n];
    for (rank, &i) in order.iter().enumerate() {
        for &j in &order[..rank] {
            if rng.gen_bool(0.6) {
                inputs[i] |= 1 << j;
            }
        }
    }
    let tables: Vec<u64> = (0..n).map(|_| rng.gen()).collect();
    BooleanNetwork::from_fn(n, |i, x| {
        tables[i] >> pack_bits(x, inputs[i]) & 1 == 1
    })
}

/// A network where each component reads a random subset of components
/// (each kept with probability `p`), through a random table.
pub fn random_sparse_network<R: Rng>(rng: &mut R, n: usize, p: f64) -> BooleanNetwork {
    let inputs: Vec<u32> = (0..n)
        .map(|_| (0..n).filter(|_| rng.gen_bool(p)).fold(0, |m, j| m | 1 << j))
        .collect();
    let tables: Vec<u64> = (0..n).map(|_| rng.gen()).collect();
    BooleanNetwork::from_fn(n, |i, x| {
        tables[i] >> pack_bits(x, inputs[i]) & 1 == 1
    })
}

/// Packs the bits of `x` selected by `mask` into the low bits.
fn pack_bits(x: u32, mask: u32) -> u32 {
    let mut key = 0;
    let mut k = 0;
    for j in 0..32 {
        if mask >> j & 1 == 1 {
            key |= (x >> j & 1) << k;
            k += 1;
        }
    }
    key
}

/// Every subspace of `{0,1}^n`, as `(mask, values)` pairs: `3^n` of them.
pub fn all_subspaces(n: usize) -> Vec<Subspace> {
    let mut out = Vec::new();
    for mask in 0u32..1 << n {
        let mut v = mask;
        loop {
            out.push(Subspace::new(n, mask, v).unwrap());
            if v == 0 {
                break;
            }
            v = (v - 1) & mask;
        }
    }
    out
}

/// Trap space by definition: every state of the subspace maps into it
/// under each single-component update.
pub fn is_trap_space_brute(f: &BooleanNetwork, s: &Subspace) -> bool {
    s.states().all(|x| {
        (0..f.n()).all(|i| {
            let y = if f.eval(i, x) { x | 1 << i } else { x & !(1 << i) };
            s.contains(y)
        })
    })
}

/// The smallest subspace containing `xs`, by scanning all `3^n` subspaces.
pub fn smallest_subspace_brute(n: usize, xs: &StateSet) -> Subspace {
    all_subspaces(n)
        .into_iter()
        .filter(|s| xs.iter().all(|x| s.contains(x)))
        .min_by_key(|s| s.size())
        .unwrap()
}

/// The smallest trap space containing `xs`, by scanning all `3^n` subspaces.
/// Trap spaces are closed under intersection, so the smallest one is unique;
/// this is asserted.
pub fn smallest_trap_space_brute(f: &BooleanNetwork, xs: &StateSet) -> Subspace {
    let n = f.n();
    let traps: Vec<Subspace> = all_subspaces(n)
        .into_iter()
        .filter(|s| xs.iter().all(|x| s.contains(x)) && is_trap_space_brute(f, s))
        .collect();
    let best = *traps.iter().min_by_key(|s| s.size()).unwrap();
    assert!(traps.iter().all(|t| best.is_subset_of(t)));
    best
}

/// Successor masks over states of a small network given raw tables.
pub fn successor_masks(tables: &[u64]) -> Vec<u64> {
    let n = tables.len();
    (0..1u32 << n)
        .map(|x| {
            let mut m = 0u64;
            for (i, t) in tables.iter().enumerate() {
                if (t >> x & 1) as u32 != x >> i & 1 {
                    m |= 1 << (x ^ 1 << i);
                }
            }
            m
        })
        .collect()
}

/// Nonempty subsets of a state space of `size` states, by increasing size.
pub fn subsets_by_size(size: u32) -> Vec<u64> {
    let all: u64 = if size == 64 { u64::MAX } else { (1 << size) - 1 };
    let mut v: Vec<u64> = (1..=all).collect();
    v.sort_by_key(|s| s.count_ones());
    v
}

/// Minimal nonempty trap sets by scanning every subset of the state space
/// (`order` from [`subsets_by_size`]). A trap set is minimal iff it contains
/// no smaller minimal one, since every trap set contains a minimal one.
/// Sorted by smallest state.
pub fn minimal_trap_sets_in(order: &[u64], tables: &[u64]) -> Vec<u64> {
    let succ = successor_masks(tables);
    let mut minimal: Vec<u64> = Vec::new();
    for &s in order {
        let mut m = s;
        let mut trap = true;
        while m != 0 {
            let x = m.trailing_zeros();
            m &= m - 1;
            if succ[x as usize] & !s != 0 {
                trap = false;
                break;
            }
        }
        if trap && !minimal.iter().any(|&t| t & !s == 0) {
            minimal.push(s);
        }
    }
    minimal.sort_by_key(|s| s.trailing_zeros());
    minimal
}

pub fn minimal_trap_sets(tables: &[u64]) -> Vec<u64> {
    assert!(tables.len() <= 4);
    minimal_trap_sets_in(&subsets_by_size(1 << tables.len()), tables)
}

/// Sign-restricted subgraph used by the fixed-pair lemma: arcs `j -> i` of
/// `g` inside `delta` whose sign is `+` iff `x_j == x_i`.
fn pair_subgraph(g: &SignedDigraph, delta: u32, x: u32) -> SignedDigraph {
    let n = g.n();
    let mut h = SignedDigraph::new(n);
    for j in (0..n).filter(|j| delta >> j & 1 == 1) {
        for i in (0..n).filter(|i| delta >> i & 1 == 1) {
            let s = if (x >> j & 1) == (x >> i & 1) { Sign::Pos } else { Sign::Neg };
            if g.signs(j, i).contains(s) {
                h.add_arc(j, i, s);
            }
        }
    }
    h
}

/// Two configurations agreeing with `f` on every component where they
/// differ force a positive cycle of the matching signs inside that set.
/// Returns the first offending pair.
pub fn check_fixed_pair_lemma(f: &BooleanNetwork) -> Result<(), String> {
    let n = f.n();
    let g = interaction_graph(f);
    for x in 0..1u32 << n {
        let fx = f.apply_bits(x);
        for y in x + 1..1u32 << n {
            let delta = x ^ y;
            let fy = f.apply_bits(y);
            if (fx ^ x) & delta != 0 || (fy ^ y) & delta != 0 {
                continue;
            }
            if pair_subgraph(&g, delta, x).is_acyclic() {
                return Err(format!("x={x:b} y={y:b}"));
            }
        }
    }
    Ok(())
}

/// A cyclic attractor needs a negative cycle among its free components.
pub fn check_cyclic_attractor_lemma(f: &BooleanNetwork) -> Result<(), String> {
    let g = interaction_graph(f);
    for a in bnsep::classify(f).attractors {
        if a.len() >= 2 {
            let free = a.subspace.free_mask() as u64;
            if !bnsep::graph::has_negative_cycle(&g.restrict(free)) {
                return Err(format!("attractor {:?}", a.states.labels()));
            }
        }
    }
    Ok(())
}

/// With two attractors, removing any free component of an attractor's
/// smallest subspace leaves a positive cycle.
pub fn check_two_attractor_lemma(f: &BooleanNetwork) -> Result<(), String> {
    let c = bnsep::classify(f);
    if c.attractors.len() < 2 {
        return Ok(());
    }
    let g = interaction_graph(f);
    for a in &c.attractors {
        for i in a.subspace.free_components() {
            if !has_positive_cycle(&g.remove_vertices(1 << i), DEFAULT_CYCLE_CAP).unwrap() {
                return Err(format!("attractor {:?}, vertex {}", a.states.labels(), i + 1));
            }
        }
    }
    Ok(())
}

/// Acyclic interaction graph: a unique fixed point reachable from every
/// configuration by a path that never flips a component twice.
pub fn check_acyclic_lemma(f: &BooleanNetwork) -> Result<(), String> {
    let n = f.n();
    if !interaction_graph(f).is_acyclic() {
        return Ok(());
    }
    let fixed = f.fixed_points();
    if fixed.len() != 1 {
        return Err(format!("{} fixed points", fixed.len()));
    }
    let z = fixed[0];
    // good[x]: a geodesic from x to z exists. A geodesic only flips
    // components in which x differs from z, each once, so process states by
    // increasing distance to z.
    let mut states: Vec<u32> = (0..1u32 << n).collect();
    states.sort_by_key(|x| (x ^ z).count_ones());
    let mut good = vec![false; 1 << n];
    for x in states {
        good[x as usize] = x == z || {
            let towards = f.unstable(x) & (x ^ z);
            (0..n).any(|i| towards >> i & 1 == 1 && good[(x ^ 1 << i) as usize])
        };
        if !good[x as usize] {
            return Err(format!("no geodesic from {x:b} to {z:b}"));
        }
    }
    Ok(())
}

/// Multiset of `(vertex set, sign)` over all cycles.
pub fn cycle_profile(g: &SignedDigraph) -> Vec<(u64, bool)> {
    let mut v: Vec<(u64, bool)> = bnsep::graph::enumerate_cycles(g, DEFAULT_CYCLE_CAP)
        .unwrap()
        .iter()
        .map(|c| (c.vertex_mask(), c.is_positive()))
        .collect();
    v.sort_unstable();
    v
}
