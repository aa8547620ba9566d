//! Deterministic input generators and the element types used in experiments.
//!
//! An [`InputSpec`] fixes the output bit for bit. Keys are drawn from
//! `ChaCha8Rng::seed_from_u64(seed)`; element payloads are derived from the
//! keys and the seed.

use std::collections::hash_map::DefaultHasher;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::config::floor_log2;

/// Name of the generator, written next to benchmark results.
pub fn prng_name() -> &'static str {
    "rand_chacha::ChaCha8Rng::seed_from_u64"
}

/// The fixed seed schedule of the experiments.
pub fn default_seeds(count: u64) -> impl Iterator<Item = u64> {
    1..=count
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown {what} `{name}` (expected one of: {expected})")]
pub struct UnknownName {
    what: &'static str,
    name: String,
    expected: String,
}

/// How many neighbour swaps are applied to a sorted array.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NeighborRule {
    SqrtN,
    N,
    NLogN,
}

impl NeighborRule {
    pub fn count(self, n: usize) -> usize {
        match self {
            NeighborRule::SqrtN => isqrt(n),
            NeighborRule::N => n,
            NeighborRule::NLogN => n * floor_log2(n),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Distribution {
    /// Shuffled `0..n`.
    RandomPerm,
    /// Uniform in `0..floor(sqrt n)`.
    RandomModSqrtN,
    /// `i mod floor(sqrt n)`.
    IModSqrtN,
    /// `(i^2 + n/2) mod n`.
    SquarePattern,
    /// `(i^8 + n/2) mod n`.
    Pow8Pattern,
    Sorted,
    Reversed,
    /// `(i + n/2) mod n`.
    Rotation,
    /// Sorted, then `k` swaps of random neighbouring pairs.
    NeighborSwaps(NeighborRule),
    /// All zero.
    Constant,
    /// Zeros in the first half, ones in the second.
    HalfHalf,
    /// Uniform over `{0, 1}`.
    RandomZeroOne,
}

impl Distribution {
    pub const ALL: [Distribution; 14] = [
        Distribution::RandomPerm,
        Distribution::RandomModSqrtN,
        Distribution::IModSqrtN,
        Distribution::SquarePattern,
        Distribution::Pow8Pattern,
        Distribution::Sorted,
        Distribution::Reversed,
        Distribution::Rotation,
        Distribution::NeighborSwaps(NeighborRule::SqrtN),
        Distribution::NeighborSwaps(NeighborRule::N),
        Distribution::NeighborSwaps(NeighborRule::NLogN),
        Distribution::Constant,
        Distribution::HalfHalf,
        Distribution::RandomZeroOne,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Distribution::RandomPerm => "random",
            Distribution::RandomModSqrtN => "random-mod-sqrt",
            Distribution::IModSqrtN => "i-mod-sqrt",
            Distribution::SquarePattern => "square",
            Distribution::Pow8Pattern => "pow8",
            Distribution::Sorted => "sorted",
            Distribution::Reversed => "reversed",
            Distribution::Rotation => "rotation",
            Distribution::NeighborSwaps(NeighborRule::SqrtN) => "swaps-sqrt",
            Distribution::NeighborSwaps(NeighborRule::N) => "swaps-n",
            Distribution::NeighborSwaps(NeighborRule::NLogN) => "swaps-nlogn",
            Distribution::Constant => "constant",
            Distribution::HalfHalf => "half-half",
            Distribution::RandomZeroOne => "zero-one",
        }
    }
}

impl fmt::Display for Distribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Distribution {
    type Err = UnknownName;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Distribution::ALL
            .into_iter()
            .find(|d| d.name() == s)
            .ok_or_else(|| UnknownName {
                what: "distribution",
                name: s.to_string(),
                expected: Distribution::ALL.map(Distribution::name).join(", "),
            })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ElementKind {
    Key32,
    Vec10,
    Rec21,
}

impl ElementKind {
    pub const ALL: [ElementKind; 3] = [ElementKind::Key32, ElementKind::Vec10, ElementKind::Rec21];

    pub fn name(self) -> &'static str {
        match self {
            ElementKind::Key32 => "key32",
            ElementKind::Vec10 => "vec10",
            ElementKind::Rec21 => "rec21",
        }
    }

    pub fn size_bytes(self) -> usize {
        match self {
            ElementKind::Key32 => std::mem::size_of::<i32>(),
            ElementKind::Vec10 => std::mem::size_of::<Vec10>(),
            ElementKind::Rec21 => std::mem::size_of::<Rec21>(),
        }
    }
}

impl fmt::Display for ElementKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ElementKind {
    type Err = UnknownName;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        ElementKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| UnknownName {
                what: "element kind",
                name: s.to_string(),
                expected: ElementKind::ALL.map(ElementKind::name).join(", "),
            })
    }
}

/// Everything needed to regenerate one input array.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct InputSpec {
    pub distribution: Distribution,
    pub n: usize,
    pub seed: u64,
    pub element_kind: ElementKind,
}

impl fmt::Display for InputSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "dist={} n={} seed={} elem={}",
            self.distribution, self.n, self.seed, self.element_kind
        )
    }
}

fn isqrt(n: usize) -> usize {
    let mut r = (n as f64).sqrt() as usize;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

/// `base^8 mod m` by three modular squarings; `m` fits in 32 bits so nothing overflows.
fn pow8_mod(base: u64, m: u64) -> u64 {
    let mut x = base % m;
    for _ in 0..3 {
        x = x * x % m;
    }
    x
}

/// The keys described by `spec` (its element kind is ignored).
pub fn generate_keys(spec: &InputSpec) -> Vec<i32> {
    let n = spec.n;
    assert!(n <= i32::MAX as usize, "n must fit in a 32-bit key");
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let half = n / 2;
    match spec.distribution {
        Distribution::RandomPerm => {
            let mut v: Vec<i32> = (0..n as i32).collect();
            v.shuffle(&mut rng);
            v
        }
        Distribution::RandomModSqrtN => {
            let m = isqrt(n).max(1) as i32;
            (0..n).map(|_| rng.gen_range(0..m)).collect()
        }
        Distribution::IModSqrtN => {
            let m = isqrt(n).max(1);
            (0..n).map(|i| (i % m) as i32).collect()
        }
        Distribution::SquarePattern => {
            let m = n as u64;
            (0..m)
                .map(|i| ((i * i % m + half as u64) % m) as i32)
                .collect()
        }
        Distribution::Pow8Pattern => {
            let m = n as u64;
            (0..m)
                .map(|i| ((pow8_mod(i, m) + half as u64) % m) as i32)
                .collect()
        }
        Distribution::Sorted => (0..n as i32).collect(),
        Distribution::Reversed => (0..n as i32).rev().collect(),
        Distribution::Rotation => (0..n).map(|i| ((i + half) % n) as i32).collect(),
        Distribution::NeighborSwaps(rule) => {
            let mut v: Vec<i32> = (0..n as i32).collect();
            if n >= 2 {
                for _ in 0..rule.count(n) {
                    let j = rng.gen_range(0..n - 1);
                    v.swap(j, j + 1);
                }
            }
            v
        }
        Distribution::Constant => vec![0; n],
        Distribution::HalfHalf => (0..n).map(|i| (i >= half) as i32).collect(),
        Distribution::RandomZeroOne => (0..n).map(|_| rng.gen_range(0..2)).collect(),
    }
}

/// A sortable element type with a key-derived construction.
pub trait Element: Clone + fmt::Debug {
    const KIND: ElementKind;

    /// The element order. Mirrors the order of the keys the elements came from.
    fn less(a: &Self, b: &Self) -> bool;

    /// Builds one element per key. Equal keys from the same seed may still
    /// differ in payload (see [`Rec21`]).
    fn lift(keys: &[i32], seed: u64) -> Vec<Self>;

    fn key(&self) -> i32;

    /// Hash of the full element, for multiset comparisons.
    fn digest(&self) -> u64;
}

impl Element for i32 {
    const KIND: ElementKind = ElementKind::Key32;

    #[inline]
    fn less(a: &Self, b: &Self) -> bool {
        a < b
    }

    fn lift(keys: &[i32], _seed: u64) -> Vec<Self> {
        keys.to_vec()
    }

    fn key(&self) -> i32 {
        *self
    }

    fn digest(&self) -> u64 {
        *self as u32 as u64
    }
}

/// Ten doubles ordered by their squared Euclidean norm, recomputed on every comparison.
///
/// Component 0 is `key + 2^31`; the others are noise in `[0, 0.25)` that depends
/// only on the key and the seed, so equal keys give identical vectors and the
/// norm order matches the key order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Vec10(pub [f64; 10]);

impl Vec10 {
    pub fn norm_squared(&self) -> f64 {
        self.0.iter().map(|x| x * x).sum()
    }

    fn from_key(key: i32, seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (key as u32 as u64).rotate_left(32));
        let mut c = [0.0; 10];
        c[0] = key as f64 + 2f64.powi(31);
        for x in &mut c[1..] {
            *x = rng.gen_range(0.0..0.25);
        }
        Vec10(c)
    }
}

impl Element for Vec10 {
    const KIND: ElementKind = ElementKind::Vec10;

    #[inline]
    fn less(a: &Self, b: &Self) -> bool {
        a.norm_squared() < b.norm_squared()
    }

    fn lift(keys: &[i32], seed: u64) -> Vec<Self> {
        keys.iter().map(|&k| Vec10::from_key(k, seed)).collect()
    }

    fn key(&self) -> i32 {
        (self.0[0] - 2f64.powi(31)) as i32
    }

    fn digest(&self) -> u64 {
        let mut h = DefaultHasher::new();
        for x in self.0 {
            x.to_bits().hash(&mut h);
        }
        h.finish()
    }
}

/// Twenty-one 32-bit integers ordered by the first one only.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Rec21(pub [i32; 21]);

impl Element for Rec21 {
    const KIND: ElementKind = ElementKind::Rec21;

    #[inline]
    fn less(a: &Self, b: &Self) -> bool {
        a.0[0] < b.0[0]
    }

    fn lift(keys: &[i32], seed: u64) -> Vec<Self> {
        // filler depends on position, not key: equal keys carry distinct payloads
        let mut rng = ChaCha8Rng::seed_from_u64(!seed);
        keys.iter()
            .map(|&k| {
                let mut r = [0; 21];
                r[0] = k;
                rng.fill(&mut r[1..]);
                Rec21(r)
            })
            .collect()
    }

    fn key(&self) -> i32 {
        self.0[0]
    }

    fn digest(&self) -> u64 {
        let mut h = DefaultHasher::new();
        self.0.hash(&mut h);
        h.finish()
    }
}

/// A lifted array of any element kind.
#[derive(Debug, Clone, PartialEq)]
pub enum ElementArray {
    Key32(Vec<i32>),
    Vec10(Vec<Vec10>),
    Rec21(Vec<Rec21>),
}

impl ElementArray {
    pub fn len(&self) -> usize {
        match self {
            ElementArray::Key32(v) => v.len(),
            ElementArray::Vec10(v) => v.len(),
            ElementArray::Rec21(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn kind(&self) -> ElementKind {
        match self {
            ElementArray::Key32(_) => ElementKind::Key32,
            ElementArray::Vec10(_) => ElementKind::Vec10,
            ElementArray::Rec21(_) => ElementKind::Rec21,
        }
    }
}

pub fn lift_elements(keys: &[i32], kind: ElementKind, seed: u64) -> ElementArray {
    match kind {
        ElementKind::Key32 => ElementArray::Key32(i32::lift(keys, seed)),
        ElementKind::Vec10 => ElementArray::Vec10(Vec10::lift(keys, seed)),
        ElementKind::Rec21 => ElementArray::Rec21(Rec21::lift(keys, seed)),
    }
}

/// Keys and elements for `spec`.
pub fn generate(spec: &InputSpec) -> ElementArray {
    lift_elements(&generate_keys(spec), spec.element_kind, spec.seed)
}

/// True if `v` is nondecreasing under `E::less`.
pub fn is_sorted_by_element<E: Element>(v: &[E]) -> bool {
    v.windows(2).all(|w| !E::less(&w[1], &w[0]))
}

/// True if `a` and `b` hold the same elements with the same multiplicities.
pub fn same_multiset<E: Element>(a: &[E], b: &[E]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let sorted_digests = |v: &[E]| {
        let mut d: Vec<(i32, u64)> = v.iter().map(|e| (e.key(), e.digest())).collect();
        d.sort_unstable();
        d
    };
    sorted_digests(a) == sorted_digests(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn keys(distribution: Distribution, n: usize, seed: u64) -> Vec<i32> {
        generate_keys(&InputSpec {
            distribution,
            n,
            seed,
            element_kind: ElementKind::Key32,
        })
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(keys(Distribution::Sorted, 4, 1), [0, 1, 2, 3]);
        assert_eq!(keys(Distribution::Reversed, 4, 1), [3, 2, 1, 0]);
        assert_eq!(keys(Distribution::Rotation, 4, 1), [2, 3, 0, 1]);
        assert_eq!(
            keys(Distribution::SquarePattern, 8, 1),
            [4, 5, 0, 5, 4, 5, 0, 5]
        );
        assert_eq!(
            keys(Distribution::IModSqrtN, 9, 1),
            [0, 1, 2, 0, 1, 2, 0, 1, 2]
        );
        assert_eq!(keys(Distribution::HalfHalf, 5, 1), [0, 0, 1, 1, 1]);
        assert_eq!(keys(Distribution::Constant, 3, 1), [0, 0, 0]);
    }

    #[test]
    fn pow8_half_value_multiplicity() {
        let n = 1 << 10;
        let v = keys(Distribution::Pow8Pattern, n, 1);
        // independent evaluation with wide integers
        for (i, &x) in v.iter().enumerate() {
            let direct = ((i as u128).pow(8) + n as u128 / 2) % n as u128;
            assert_eq!(x as u128, direct);
        }
        let count = v.iter().filter(|&&x| x == n as i32 / 2).count() as f64;
        let expected = (n as f64).powf(7.0 / 8.0);
        assert!(
            count >= expected / 2.0 && count <= expected * 2.0,
            "{count} vs {expected}"
        );
    }

    #[test]
    fn random_distributions_are_deterministic_and_in_range() {
        let n = 1000;
        for d in Distribution::ALL {
            let a = keys(d, n, 7);
            assert_eq!(a, keys(d, n, 7), "{d}");
            assert_eq!(a.len(), n);
        }
        let mut perm = keys(Distribution::RandomPerm, n, 3);
        assert_ne!(perm, keys(Distribution::RandomPerm, n, 4));
        perm.sort();
        assert_eq!(perm, (0..n as i32).collect::<Vec<_>>());
        assert!(keys(Distribution::RandomModSqrtN, n, 3)
            .iter()
            .all(|&x| (0..31).contains(&x)));
        assert!(keys(Distribution::RandomZeroOne, n, 3)
            .iter()
            .all(|&x| x == 0 || x == 1));
    }

    #[test]
    fn neighbor_swaps_keep_values_and_displace_by_few() {
        for rule in [NeighborRule::SqrtN, NeighborRule::N, NeighborRule::NLogN] {
            let n = 4096;
            let mut v = keys(Distribution::NeighborSwaps(rule), n, 11);
            let inversions_bound = rule.count(n);
            let moved = v
                .iter()
                .enumerate()
                .filter(|(i, &x)| *i as i32 != x)
                .count();
            assert!(moved <= 2 * inversions_bound);
            if rule == NeighborRule::N {
                assert!(moved > 0);
            }
            v.sort();
            assert_eq!(v, (0..n as i32).collect::<Vec<_>>());
        }
    }

    #[test]
    fn empty_and_tiny() {
        for d in Distribution::ALL {
            assert!(keys(d, 0, 1).is_empty());
            assert_eq!(keys(d, 1, 1).len(), 1);
        }
        assert!(lift_elements(&[], ElementKind::Vec10, 1).is_empty());
    }

    #[test]
    fn rec21_compares_first_component() {
        let v = Rec21::lift(&[1, 2], 5);
        assert_eq!((v[0].0[0], v[1].0[0]), (1, 2));
        assert!(Rec21::less(&v[0], &v[1]));
        assert!(!Rec21::less(&v[1], &v[0]));
    }

    fn order_matches_keys<E: Element>(keys: &[i32]) {
        let elems = E::lift(keys, 99);
        for (i, a) in elems.iter().enumerate() {
            for (j, b) in elems.iter().enumerate() {
                assert_eq!(
                    E::less(a, b),
                    keys[i] < keys[j],
                    "{:?} vs {:?}",
                    keys[i],
                    keys[j]
                );
            }
            assert_eq!(a.key(), keys[i]);
        }
    }

    #[test]
    fn lifted_order_is_key_order() {
        let mut sample: Vec<i32> = keys(Distribution::RandomPerm, 48, 2);
        sample.extend([
            i32::MIN,
            i32::MIN + 1,
            -1,
            0,
            1,
            i32::MAX - 1,
            i32::MAX,
            3,
            3,
            3,
            0,
            0,
            7,
            7,
            -5,
            -5,
        ]);
        assert_eq!(sample.len(), 64);
        order_matches_keys::<i32>(&sample);
        order_matches_keys::<Vec10>(&sample);
        order_matches_keys::<Rec21>(&sample);
        let v = Vec10::lift(&[3, 1], 4);
        assert!(Vec10::less(&v[1], &v[0]));
    }

    #[test]
    fn equal_keys_give_identical_vectors() {
        let v = Vec10::lift(&[5, 9, 5], 1);
        assert_eq!(v[0], v[2]);
        assert_ne!(v[0], v[1]);
    }

    #[test]
    fn multiset_check() {
        let a = Rec21::lift(&[3, 1, 3], 2);
        let mut b = a.clone();
        b.swap(0, 2);
        assert!(same_multiset(&a, &b));
        b[0] = b[1];
        assert!(!same_multiset(&a, &b));
    }
}
