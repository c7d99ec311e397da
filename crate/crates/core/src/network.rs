//! Configurations, subspaces, state sets and Boolean networks.
//!
//! A configuration on `n` components is stored as an integer whose bit `i`
//! is the value of component `i` (component 0 is the least significant bit).
//! Textual labels print component 0 first, so the label `"1010"` means
//! `x1 = 1, x2 = 0, x3 = 1, x4 = 0`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Default cap on the number of components for full state-space analysis.
pub const DEFAULT_MAX_N: usize = 24;

/// Largest component count representable at all (state indices are `u32`).
pub const HARD_MAX_N: usize = 30;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NetworkError {
    #[error("dimension mismatch: expected {expected} components, got {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("empty set of configurations")]
    EmptySet,
    #[error("invalid configuration label {0:?}")]
    InvalidLabel(String),
    #[error("invalid subspace: values {values:#b} not within mask {mask:#b}")]
    InvalidSubspace { mask: u32, values: u32 },
    #[error("too many components: {n} (maximum {max})")]
    TooManyComponents { n: usize, max: usize },
}

fn check_dim(expected: usize, found: usize) -> Result<(), NetworkError> {
    if expected == found {
        Ok(())
    } else {
        Err(NetworkError::DimensionMismatch { expected, found })
    }
}

/// Mask with the low `n` bits set.
#[inline]
pub(crate) fn low_mask(n: usize) -> u32 {
    if n >= 32 {
        u32::MAX
    } else {
        (1u32 << n) - 1
    }
}

/// Scatters the low bits of `bits` into the positions set in `mask`.
#[inline]
pub(crate) fn deposit(mut bits: u32, mut mask: u32) -> u32 {
    let mut out = 0;
    while mask != 0 {
        let low = mask & mask.wrapping_neg();
        if bits & 1 != 0 {
            out |= low;
        }
        bits >>= 1;
        mask &= mask - 1;
    }
    out
}

/// Gathers the bits of `x` at the positions set in `mask` into the low bits.
#[inline]
pub(crate) fn extract(x: u32, mut mask: u32) -> u32 {
    let mut out = 0;
    let mut k = 0;
    while mask != 0 {
        let low = mask & mask.wrapping_neg();
        if x & low != 0 {
            out |= 1 << k;
        }
        k += 1;
        mask &= mask - 1;
    }
    out
}

/// Renders a state index as a label, component 0 first.
pub fn state_label(n: usize, x: u32) -> String {
    (0..n)
        .map(|i| if x >> i & 1 == 1 { '1' } else { '0' })
        .collect()
}

/// Parses a label written component 0 first.
pub fn parse_state_label(label: &str) -> Result<(usize, u32), NetworkError> {
    let label = label.trim();
    if label.len() > HARD_MAX_N {
        return Err(NetworkError::InvalidLabel(label.to_string()));
    }
    let mut bits = 0u32;
    for (i, c) in label.chars().enumerate() {
        match c {
            '0' => {}
            '1' => bits |= 1 << i,
            _ => return Err(NetworkError::InvalidLabel(label.to_string())),
        }
    }
    Ok((label.chars().count(), bits))
}

/// One global state of a network.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Configuration {
    n: u8,
    bits: u32,
}

impl Configuration {
    /// Panics if `n` exceeds [`HARD_MAX_N`] or `bits` has bits at or above `n`.
    pub fn new(n: usize, bits: u32) -> Self {
        assert!(n <= HARD_MAX_N, "configuration too wide: {n}");
        assert_eq!(bits & !low_mask(n), 0, "bits beyond component count");
        Configuration { n: n as u8, bits }
    }

    pub fn zeros(n: usize) -> Self {
        Self::new(n, 0)
    }

    pub fn ones(n: usize) -> Self {
        Self::new(n, low_mask(n))
    }

    /// The configuration `e_I` for a component set given as a bit mask.
    pub fn indicator(n: usize, components: u32) -> Self {
        Self::new(n, components)
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn get(&self, i: usize) -> bool {
        self.bits >> i & 1 == 1
    }

    pub fn flip(&self, i: usize) -> Self {
        assert!(i < self.n());
        Configuration {
            n: self.n,
            bits: self.bits ^ (1 << i),
        }
    }

    pub fn complement(&self) -> Self {
        Configuration {
            n: self.n,
            bits: self.bits ^ low_mask(self.n()),
        }
    }

    /// Componentwise sum modulo two.
    pub fn add(&self, other: &Configuration) -> Result<Configuration, NetworkError> {
        check_dim(self.n(), other.n())?;
        Ok(Configuration {
            n: self.n,
            bits: self.bits ^ other.bits,
        })
    }

    pub fn label(&self) -> String {
        state_label(self.n(), self.bits)
    }
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

impl fmt::Debug for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Configuration({})", self.label())
    }
}

impl FromStr for Configuration {
    type Err = NetworkError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (n, bits) = parse_state_label(s)?;
        Ok(Configuration::new(n, bits))
    }
}

/// Hamming distance `|Δ(x, y)|`.
pub fn hamming(x: &Configuration, y: &Configuration) -> Result<usize, NetworkError> {
    check_dim(x.n(), y.n())?;
    Ok((x.bits ^ y.bits).count_ones() as usize)
}

/// A set of configurations, stored as a bitset over all `2^n` states.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct StateSet {
    n: usize,
    words: Vec<u64>,
}

impl StateSet {
    pub fn empty(n: usize) -> Self {
        assert!(n <= HARD_MAX_N);
        let len = (1usize << n).div_ceil(64);
        StateSet {
            n,
            words: vec![0; len],
        }
    }

    pub fn full(n: usize) -> Self {
        let mut set = Self::empty(n);
        let size = 1usize << n;
        for (k, w) in set.words.iter_mut().enumerate() {
            let remaining = size - k * 64;
            *w = if remaining >= 64 {
                u64::MAX
            } else {
                (1u64 << remaining) - 1
            };
        }
        set
    }

    pub fn from_states<I: IntoIterator<Item = u32>>(n: usize, states: I) -> Self {
        let mut set = Self::empty(n);
        for x in states {
            set.insert(x);
        }
        set
    }

    pub fn from_subspace(space: &Subspace) -> Self {
        Self::from_states(space.n(), space.states())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn contains(&self, x: u32) -> bool {
        let x = x as usize;
        self.words[x >> 6] >> (x & 63) & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, x: u32) -> bool {
        let x = x as usize;
        assert!(x < 1usize << self.n);
        let w = &mut self.words[x >> 6];
        let bit = 1u64 << (x & 63);
        let fresh = *w & bit == 0;
        *w |= bit;
        fresh
    }

    pub fn remove(&mut self, x: u32) {
        let x = x as usize;
        self.words[x >> 6] &= !(1u64 << (x & 63));
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.words.iter().enumerate().flat_map(|(k, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let t = w.trailing_zeros();
                    w &= w - 1;
                    Some((k as u32) * 64 + t)
                }
            })
        })
    }

    pub fn min(&self) -> Option<u32> {
        self.iter().next()
    }

    pub fn configurations(&self) -> impl Iterator<Item = Configuration> + '_ {
        self.iter().map(move |x| Configuration::new(self.n, x))
    }

    pub fn is_subset(&self, other: &StateSet) -> bool {
        self.words
            .iter()
            .zip(&other.words)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn intersects(&self, other: &StateSet) -> bool {
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    pub fn union_with(&mut self, other: &StateSet) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    /// Labels of the members in increasing state order.
    pub fn labels(&self) -> Vec<String> {
        self.iter().map(|x| state_label(self.n, x)).collect()
    }

    /// The smallest subspace `[X]` containing this set.
    pub fn smallest_subspace(&self) -> Result<Subspace, NetworkError> {
        Subspace::smallest_containing(self.n, self.iter())
    }
}

/// A subspace: the configurations obtained by fixing the components in
/// `mask` to the corresponding bits of `values`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct Subspace {
    n: u8,
    mask: u32,
    values: u32,
}

impl Subspace {
    pub fn new(n: usize, mask: u32, values: u32) -> Result<Self, NetworkError> {
        if n > HARD_MAX_N {
            return Err(NetworkError::TooManyComponents { n, max: HARD_MAX_N });
        }
        if values & !mask != 0 || mask & !low_mask(n) != 0 {
            return Err(NetworkError::InvalidSubspace { mask, values });
        }
        Ok(Subspace {
            n: n as u8,
            mask,
            values,
        })
    }

    pub fn whole(n: usize) -> Self {
        Self::new(n, 0, 0).expect("whole space")
    }

    pub fn point(x: &Configuration) -> Self {
        Subspace {
            n: x.n,
            mask: low_mask(x.n()),
            values: x.bits,
        }
    }

    /// Smallest subspace containing the given states (mask = components
    /// constant across the set).
    pub fn smallest_containing<I: IntoIterator<Item = u32>>(
        n: usize,
        states: I,
    ) -> Result<Self, NetworkError> {
        let mut iter = states.into_iter();
        let first = iter.next().ok_or(NetworkError::EmptySet)?;
        let mut varying = 0u32;
        for x in iter {
            varying |= x ^ first;
        }
        let mask = low_mask(n) & !varying;
        Subspace::new(n, mask, first & mask)
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn fixed_mask(&self) -> u32 {
        self.mask
    }

    pub fn values(&self) -> u32 {
        self.values
    }

    /// The free components `Δ` as a bit mask.
    pub fn free_mask(&self) -> u32 {
        low_mask(self.n()) & !self.mask
    }

    pub fn free_components(&self) -> Vec<usize> {
        (0..self.n()).filter(|&i| self.free_mask() >> i & 1 == 1).collect()
    }

    pub fn dimension(&self) -> usize {
        self.free_mask().count_ones() as usize
    }

    pub fn size(&self) -> u64 {
        1u64 << self.dimension()
    }

    #[inline]
    pub fn contains(&self, x: u32) -> bool {
        x & self.mask == self.values
    }

    pub fn contains_config(&self, x: &Configuration) -> bool {
        x.n == self.n && self.contains(x.bits)
    }

    /// Two subspaces intersect iff they agree on their common fixed components.
    pub fn intersects(&self, other: &Subspace) -> bool {
        let common = self.mask & other.mask;
        self.values & common == other.values & common
    }

    pub fn is_subset_of(&self, other: &Subspace) -> bool {
        other.mask & !self.mask == 0 && self.values & other.mask == other.values
    }

    /// Frees the given components.
    pub fn widen(&self, components: u32) -> Subspace {
        Subspace {
            n: self.n,
            mask: self.mask & !components,
            values: self.values & !components,
        }
    }

    /// Member state indices in increasing order.
    pub fn states(&self) -> impl Iterator<Item = u32> {
        let free = self.free_mask();
        let values = self.values;
        let mut sub = Some(0u32);
        std::iter::from_fn(move || {
            let cur = sub?;
            let next = (cur | !free).wrapping_add(1) & free;
            sub = if next == 0 { None } else { Some(next) };
            Some(values | cur)
        })
    }

    /// Pattern such as `"1*0"`: fixed components show their value, free ones `*`.
    pub fn pattern(&self) -> String {
        (0..self.n())
            .map(|i| {
                if self.mask >> i & 1 == 0 {
                    '*'
                } else if self.values >> i & 1 == 1 {
                    '1'
                } else {
                    '0'
                }
            })
            .collect()
    }

    pub fn from_pattern(pattern: &str) -> Result<Self, NetworkError> {
        let pattern = pattern.trim();
        let n = pattern.chars().count();
        if n > HARD_MAX_N {
            return Err(NetworkError::TooManyComponents { n, max: HARD_MAX_N });
        }
        let (mut mask, mut values) = (0u32, 0u32);
        for (i, c) in pattern.chars().enumerate() {
            match c {
                '*' => {}
                '0' => mask |= 1 << i,
                '1' => {
                    mask |= 1 << i;
                    values |= 1 << i;
                }
                _ => return Err(NetworkError::InvalidLabel(pattern.to_string())),
            }
        }
        Subspace::new(n, mask, values)
    }
}

impl fmt::Display for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.pattern())
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace({})", self.pattern())
    }
}

impl From<Subspace> for String {
    fn from(s: Subspace) -> String {
        s.pattern()
    }
}

impl TryFrom<String> for Subspace {
    type Error = NetworkError;

    fn try_from(s: String) -> Result<Self, Self::Error> {
        Subspace::from_pattern(&s)
    }
}

/// Smallest subspace `[X]` containing a nonempty set of configurations.
pub fn smallest_subspace(xs: &[Configuration]) -> Result<Subspace, NetworkError> {
    let first = xs.first().ok_or(NetworkError::EmptySet)?;
    for x in xs {
        check_dim(first.n(), x.n())?;
    }
    Subspace::smallest_containing(first.n(), xs.iter().map(|x| x.bits))
}

/// A Boolean network `f: {0,1}^n -> {0,1}^n`, one truth table per component.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct BooleanNetwork {
    n: usize,
    words: usize,
    tables: Vec<u64>,
}

impl BooleanNetwork {
    fn blank(n: usize) -> Self {
        assert!(n <= HARD_MAX_N, "network too large: {n}");
        let words = (1usize << n).div_ceil(64);
        BooleanNetwork {
            n,
            words,
            tables: vec![0; words * n],
        }
    }

    /// Builds a network from a per-component evaluation function.
    pub fn from_fn<F: FnMut(usize, u32) -> bool>(n: usize, mut f: F) -> Self {
        let mut net = Self::blank(n);
        let size = 1u32 << n;
        for i in 0..n {
            for x in 0..size {
                if f(i, x) {
                    net.set(i, x);
                }
            }
        }
        net
    }

    /// Builds a network from raw tables; table `i` holds `2^n` bits,
    /// little-endian over 64-bit words.
    pub fn from_tables(n: usize, tables: Vec<Vec<u64>>) -> Result<Self, NetworkError> {
        check_dim(n, tables.len())?;
        let mut net = Self::blank(n);
        let valid = valid_word_mask(n);
        for (i, t) in tables.into_iter().enumerate() {
            check_dim(net.words, t.len())?;
            for (k, w) in t.into_iter().enumerate() {
                net.tables[i * net.words + k] = if net.words == 1 { w & valid } else { w };
            }
        }
        Ok(net)
    }

    /// Small networks (`n <= 6`) from one 64-bit table per component.
    pub fn from_small_tables(tables: &[u64]) -> Self {
        let n = tables.len();
        assert!(n <= 6);
        let valid = valid_word_mask(n);
        BooleanNetwork {
            n,
            words: 1,
            tables: tables.iter().map(|t| t & valid).collect(),
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, |i, x| x >> i & 1 == 1)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn state_count(&self) -> u64 {
        1u64 << self.n
    }

    /// Raw words of the table of component `i`.
    pub fn table(&self, i: usize) -> &[u64] {
        &self.tables[i * self.words..(i + 1) * self.words]
    }

    #[inline]
    fn set(&mut self, i: usize, x: u32) {
        let x = x as usize;
        self.tables[i * self.words + (x >> 6)] |= 1 << (x & 63);
    }

    /// `f_i(x)`.
    #[inline]
    pub fn eval(&self, i: usize, x: u32) -> bool {
        let x = x as usize;
        self.tables[i * self.words + (x >> 6)] >> (x & 63) & 1 == 1
    }

    /// `f(x)` on raw state indices.
    #[inline]
    pub fn apply_bits(&self, x: u32) -> u32 {
        let xs = x as usize;
        let (word, bit) = (xs >> 6, xs & 63);
        let mut out = 0;
        for i in 0..self.n {
            out |= ((self.tables[i * self.words + word] >> bit) & 1) as u32 * (1 << i);
        }
        out
    }

    /// Components `i` with `f_i(x) != x_i`.
    #[inline]
    pub fn unstable(&self, x: u32) -> u32 {
        self.apply_bits(x) ^ x
    }

    pub fn apply(&self, x: &Configuration) -> Result<Configuration, NetworkError> {
        check_dim(self.n, x.n())?;
        Ok(Configuration::new(self.n, self.apply_bits(x.bits())))
    }

    pub fn is_fixed_point(&self, x: u32) -> bool {
        self.unstable(x) == 0
    }

    pub fn fixed_points(&self) -> Vec<u32> {
        (0..1u32 << self.n).filter(|&x| self.is_fixed_point(x)).collect()
    }

    /// Whether flipping input `j` from 0 to 1 can increase (resp. decrease) `f_i`.
    pub fn influence(&self, j: usize, i: usize) -> (bool, bool) {
        let t = self.table(i);
        let mut up = false;
        let mut down = false;
        if j < 6 {
            let shift = 1u32 << j;
            let low = LOW_HALF[j] & valid_word_mask(self.n);
            for &w in t {
                let lo = w & low;
                let hi = (w >> shift) & low;
                up |= !lo & hi != 0;
                down |= lo & !hi != 0;
            }
        } else {
            let stride = 1usize << (j - 6);
            let mut k = 0;
            while k < t.len() {
                for a in k..k + stride {
                    let (lo, hi) = (t[a], t[a + stride]);
                    up |= !lo & hi != 0;
                    down |= lo & !hi != 0;
                }
                k += 2 * stride;
            }
        }
        (up, down)
    }

    /// Whether `f_i` depends on component `j`.
    pub fn depends_on(&self, i: usize, j: usize) -> bool {
        let (up, down) = self.influence(j, i);
        up || down
    }

    /// The `I`-switch `h(x) = f(x + e_I) + e_I`.
    pub fn switch(&self, components: u32) -> BooleanNetwork {
        let components = components & low_mask(self.n);
        BooleanNetwork::from_fn(self.n, |i, x| {
            self.eval(i, x ^ components) ^ (components >> i & 1 == 1)
        })
    }

    /// The subnetwork induced by a subspace: a network on the free
    /// components (in increasing index order) with the fixed components held
    /// at the subspace's values.
    pub fn subnetwork(&self, space: &Subspace) -> Result<BooleanNetwork, NetworkError> {
        check_dim(self.n, space.n())?;
        let free = space.free_components();
        let free_mask = space.free_mask();
        let values = space.values();
        Ok(BooleanNetwork::from_fn(free.len(), |p, z| {
            self.eval(free[p], deposit(z, free_mask) | values)
        }))
    }

    /// Network text in the `.bn` format, components named `x1..xn`.
    pub fn to_bn_text(&self) -> String {
        let names: Vec<String> = (1..=self.n).map(|k| format!("x{k}")).collect();
        self.to_bn_text_with(&names)
    }

    /// Network text using the given component names. Each function is
    /// written as a disjunction of minterms over its essential inputs.
    pub fn to_bn_text_with(&self, names: &[String]) -> String {
        assert_eq!(names.len(), self.n);
        let mut out = String::new();
        for i in 0..self.n {
            out.push_str(&names[i]);
            out.push_str(" = ");
            out.push_str(&self.render_function(i, names));
            out.push('\n');
        }
        out
    }

    fn render_function(&self, i: usize, names: &[String]) -> String {
        let inputs: Vec<usize> = (0..self.n).filter(|&j| self.depends_on(i, j)).collect();
        if inputs.is_empty() {
            return if self.eval(i, 0) { "1" } else { "0" }.to_string();
        }
        let mask = inputs.iter().fold(0u32, |m, &j| m | 1 << j);
        let mut terms = Vec::new();
        for local in 0..1u32 << inputs.len() {
            let x = deposit(local, mask);
            if self.eval(i, x) {
                let lits: Vec<String> = inputs
                    .iter()
                    .map(|&j| {
                        if x >> j & 1 == 1 {
                            names[j].clone()
                        } else {
                            format!("!{}", names[j])
                        }
                    })
                    .collect();
                terms.push(lits.join(" & "));
            }
        }
        terms.join(" | ")
    }
}

/// Valid bit positions in a single-word table for `n < 6`.
#[inline]
pub(crate) fn valid_word_mask(n: usize) -> u64 {
    if n >= 6 {
        u64::MAX
    } else {
        (1u64 << (1 << n)) - 1
    }
}

/// Positions (within a 64-state word) where bit `j` of the state is 0.
pub(crate) const LOW_HALF: [u64; 6] = [
    0x5555_5555_5555_5555,
    0x3333_3333_3333_3333,
    0x0f0f_0f0f_0f0f_0f0f,
    0x00ff_00ff_00ff_00ff,
    0x0000_ffff_0000_ffff,
    0x0000_0000_ffff_ffff,
];

/// Convenience for building small configurations from labels in tests and
/// fixtures. Panics on malformed input.
pub fn config(label: &str) -> Configuration {
    label.parse().expect("valid configuration label")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xor_pair() -> BooleanNetwork {
        BooleanNetwork::from_fn(2, |_, x| (x & 1) ^ (x >> 1 & 1) == 1)
    }

    #[test]
    fn labels_print_first_component_first() {
        let x = config("1010");
        assert_eq!(x.bits(), 0b0101);
        assert!(x.get(0) && !x.get(1) && x.get(2) && !x.get(3));
        assert_eq!(x.to_string(), "1010");
        assert!("10a".parse::<Configuration>().is_err());
    }

    #[test]
    fn hamming_examples() {
        let x = config("1010");
        assert_eq!(hamming(&x, &x).unwrap(), 0);
        assert_eq!(hamming(&Configuration::zeros(4), &Configuration::ones(4)).unwrap(), 4);
        assert_eq!(hamming(&x, &config("1011")).unwrap(), 1);
        assert_eq!(
            hamming(&x, &config("101")),
            Err(NetworkError::DimensionMismatch { expected: 4, found: 3 })
        );
    }

    #[test]
    fn apply_identity_and_xor() {
        let id = BooleanNetwork::identity(3);
        for x in 0..8 {
            assert_eq!(id.apply_bits(x), x);
        }
        let f = xor_pair();
        assert_eq!(f.apply(&config("01")).unwrap(), config("11"));
        assert_eq!(f.apply(&config("00")).unwrap(), config("00"));
        assert_eq!(f.apply(&config("10")).unwrap(), config("11"));
        assert_eq!(f.apply(&config("11")).unwrap(), config("00"));
        assert!(f.apply(&config("011")).is_err());
    }

    #[test]
    fn smallest_subspace_examples() {
        let x = config("0110");
        assert_eq!(smallest_subspace(&[x]).unwrap(), Subspace::point(&x));
        let b = [config("01"), config("10"), config("11")];
        assert_eq!(smallest_subspace(&b).unwrap(), Subspace::whole(2));
        assert_eq!(smallest_subspace(&[]), Err(NetworkError::EmptySet));
    }

    #[test]
    fn subspace_patterns_and_intersection() {
        let a = Subspace::from_pattern("****0").unwrap();
        let b = Subspace::from_pattern("****1").unwrap();
        let c = Subspace::from_pattern("1***").unwrap();
        assert!(!a.intersects(&b));
        assert!(a.intersects(&Subspace::whole(5)));
        assert_eq!(c.size(), 8);
        assert_eq!(c.states().count(), 8);
        assert!(c.states().all(|x| c.contains(x)));
        assert_eq!(a.to_string(), "****0");
        assert!(Subspace::new(3, 0b001, 0b010).is_err());
    }

    #[test]
    fn subspace_serde_as_pattern() {
        let s = Subspace::from_pattern("1*0").unwrap();
        let json = serde_json::to_string(&s).unwrap();
        assert_eq!(json, "\"1*0\"");
        let back: Subspace = serde_json::from_str(&json).unwrap();
        assert_eq!(back, s);
    }

    #[test]
    fn switch_is_an_involution_and_composes() {
        let f = BooleanNetwork::from_fn(3, |i, x| (x.count_ones() as usize + i).is_multiple_of(3));
        assert_eq!(f.switch(0), f);
        assert_eq!(f.switch(0b111).switch(0b111), f);
        for a in 0..8 {
            for b in 0..8 {
                assert_eq!(f.switch(a).switch(b), f.switch(a ^ b));
            }
        }
    }

    #[test]
    fn subnetwork_of_whole_space_is_identity() {
        let f = xor_pair();
        assert_eq!(f.subnetwork(&Subspace::whole(2)).unwrap(), f);
    }

    #[test]
    fn zero_free_subnetwork_has_one_state() {
        let f = xor_pair();
        let h = f.subnetwork(&Subspace::point(&config("10"))).unwrap();
        assert_eq!(h.n(), 0);
        assert_eq!(h.state_count(), 1);
        assert_eq!(h.apply_bits(0), 0);
    }

    #[test]
    fn influence_detects_signs_on_wide_tables() {
        // f_0 = x7 (positive), f_1 = !x7 (negative), on 8 components
        let f = BooleanNetwork::from_fn(8, |i, x| match i {
            0 => x >> 7 & 1 == 1,
            1 => x >> 7 & 1 == 0,
            _ => false,
        });
        assert_eq!(f.influence(7, 0), (true, false));
        assert_eq!(f.influence(7, 1), (false, true));
        assert_eq!(f.influence(3, 0), (false, false));
    }

    #[test]
    fn state_set_basics() {
        let mut s = StateSet::empty(7);
        assert!(s.is_empty());
        s.insert(100);
        s.insert(3);
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![3, 100]);
        assert_eq!(s.len(), 2);
        assert_eq!(StateSet::full(2).len(), 4);
        assert_eq!(StateSet::full(7).len(), 128);
        let sub = Subspace::from_pattern("1*").unwrap();
        assert_eq!(StateSet::from_subspace(&sub).labels(), vec!["10", "11"]);
    }

    #[test]
    fn deposit_extract_roundtrip() {
        let mask = 0b1011_0100;
        for z in 0..16 {
            assert_eq!(extract(deposit(z, mask), mask), z);
        }
    }
}
