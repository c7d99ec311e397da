//! Allocation-free classification for networks with at most six components,
//! one 64-bit table per component. Used by the census; cross-checked against
//! [`crate::dynamics::classify`] in tests.

use crate::dynamics::Flags;
use crate::network::{valid_word_mask, LOW_HALF};

/// Components flipping at `x`.
#[inline]
fn unstable(tables: &[u64], x: u32) -> u32 {
    let mut m = 0;
    for (i, t) in tables.iter().enumerate() {
        let fi = (t >> x) & 1;
        let xi = (x >> i) as u64 & 1;
        m |= ((fi ^ xi) as u32) << i;
    }
    m
}

/// Unstable-component masks of every state: the whole asynchronous graph.
#[derive(Clone, Copy)]
pub(crate) struct SmallDynamics {
    n: usize,
    unstable: [u32; 64],
}

impl SmallDynamics {
    pub(crate) fn new(tables: &[u64]) -> Self {
        let n = tables.len();
        debug_assert!(n <= 6);
        let mut unst = [0u32; 64];
        for (x, u) in unst.iter_mut().enumerate().take(1 << n) {
            *u = unstable(tables, x as u32);
        }
        SmallDynamics { n, unstable: unst }
    }

    /// The union of two asynchronous graphs on the same space.
    pub(crate) fn union(&self, other: &SmallDynamics) -> Self {
        debug_assert_eq!(self.n, other.n);
        let mut u = *self;
        for x in 0..1 << self.n {
            u.unstable[x] |= other.unstable[x];
        }
        u
    }

    /// Attractors as state masks, ordered by smallest state.
    pub(crate) fn attractor_masks(&self, out: &mut Vec<u64>) {
        let size = 1usize << self.n;
        let mut reach = [0u64; 64];
        for (x, r) in reach.iter_mut().enumerate().take(size) {
            let mut m = 1u64 << x;
            let mut u = self.unstable[x];
            while u != 0 {
                let i = u.trailing_zeros();
                u &= u - 1;
                m |= 1 << (x ^ (1 << i));
            }
            *r = m;
        }
        for k in 0..size {
            let rk = reach[k];
            for r in reach.iter_mut().take(size) {
                if *r >> k & 1 == 1 {
                    *r |= rk;
                }
            }
        }
        out.clear();
        for x in 0..size {
            let r = reach[x];
            if r.trailing_zeros() as usize != x {
                continue;
            }
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
            if terminal {
                out.push(r);
            }
        }
    }

    fn trap_closure(&self, mut fixed: u32, mut values: u32) -> (u32, u32) {
        loop {
            let mut escaping = 0;
            for x in 0..1u32 << self.n {
                if x & fixed == values {
                    escaping |= self.unstable[x as usize] & fixed;
                }
            }
            if escaping == 0 {
                return (fixed, values);
            }
            fixed &= !escaping;
            values &= !escaping;
        }
    }

    pub(crate) fn flags(&self, scratch: &mut Vec<u64>) -> Flags {
        let n = self.n;
        self.attractor_masks(scratch);
        let k = scratch.len();
        let mut sub = [(0u32, 0u32); 64];
        let mut trap = [(0u32, 0u32); 64];
        let mut fixing = true;
        let mut equal = true;
        for (a, &states) in scratch.iter().enumerate() {
            fixing &= states.count_ones() == 1;
            sub[a] = hull(n, states);
            trap[a] = self.trap_closure(sub[a].0, sub[a].1);
            equal &= sub[a] == trap[a];
        }
        let mut separating = true;
        let mut trap_separating = true;
        for a in 0..k {
            for b in a + 1..k {
                separating &= disjoint(sub[a], sub[b]);
                trap_separating &= disjoint(trap[a], trap[b]);
            }
        }
        Flags {
            fixing,
            converging: k == 1,
            separating,
            trap_separating,
            trapping: separating && equal,
        }
    }
}

/// `(fixed mask, values)` of the smallest subspace containing a state mask.
#[inline]
fn hull(n: usize, states: u64) -> (u32, u32) {
    let mut and = u32::MAX;
    let mut or = 0u32;
    let mut m = states;
    while m != 0 {
        let x = m.trailing_zeros();
        m &= m - 1;
        and &= x;
        or |= x;
    }
    let fixed = !(and ^ or) & ((1u32 << n) - 1);
    (fixed, and & fixed)
}

#[inline]
fn disjoint(a: (u32, u32), b: (u32, u32)) -> bool {
    let common = a.0 & b.0;
    a.1 & common != b.1 & common
}

/// Flags of one small network given raw tables.
pub(crate) fn small_flags(tables: &[u64], scratch: &mut Vec<u64>) -> Flags {
    SmallDynamics::new(tables).flags(scratch)
}

/// Flags of a network with at most six components, one table per component
/// (bit `x` of table `i` is `f_i(x)`). Same result as
/// [`classify`](crate::dynamics::classify) without allocating per call.
pub fn fast_flags(tables: &[u64]) -> Flags {
    assert!(tables.len() <= 6, "fast path handles at most six components");
    small_flags(tables, &mut Vec::new())
}

/// Attractors of a network with at most six components, as state masks
/// ordered by smallest state.
pub fn fast_attractors(tables: &[u64]) -> Vec<u64> {
    assert!(tables.len() <= 6, "fast path handles at most six components");
    let mut out = Vec::new();
    SmallDynamics::new(tables).attractor_masks(&mut out);
    out
}

/// Interaction graph code (two bits per ordered pair `(j, i)` at `j * n + i`)
/// of a small network.
pub(crate) fn small_graph_code(tables: &[u64]) -> u128 {
    let n = tables.len();
    let valid = valid_word_mask(n);
    let mut code = 0u128;
    for (i, &t) in tables.iter().enumerate() {
        for j in 0..n {
            let low = LOW_HALF[j] & valid;
            let lo = t & low;
            let hi = (t >> (1u32 << j)) & low;
            let up = (!lo & hi != 0) as u128;
            let down = (lo & !hi != 0) as u128;
            code |= (up | down << 1) << (2 * (j * n + i));
        }
    }
    code
}
