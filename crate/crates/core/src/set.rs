//! Dense subsets of a universe of at most 64 elements.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{BitAnd, BitOr, Sub};

use serde::{Deserialize, Serialize};

/// Largest universe the dense representation supports.
pub const MAX_ELEMENTS: usize = 64;

/// A subset of `{0, .., n-1}` stored as a bit mask.
///
/// The set does not carry its universe; containers such as
/// [`SetFamily`](crate::SetFamily) own the labels and the size bound.
///
/// `Ord` is the canonical order used for all deterministic output: by
/// cardinality first, then lexicographically on the ascending index sequence.
/// It is unrelated to inclusion; use [`ElementSet::is_subset`] for that.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ElementSet(u64);

impl ElementSet {
    pub const EMPTY: ElementSet = ElementSet(0);

    pub const fn from_bits(bits: u64) -> Self {
        ElementSet(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    /// `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        assert!(
            n <= MAX_ELEMENTS,
            "universe of {n} elements exceeds {MAX_ELEMENTS}"
        );
        if n == MAX_ELEMENTS {
            ElementSet(u64::MAX)
        } else {
            ElementSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(i: usize) -> Self {
        assert!(i < MAX_ELEMENTS);
        ElementSet(1u64 << i)
    }

    pub fn contains(self, i: usize) -> bool {
        i < MAX_ELEMENTS && self.0 >> i & 1 == 1
    }

    #[must_use]
    pub fn with(self, i: usize) -> Self {
        self | ElementSet::singleton(i)
    }

    #[must_use]
    pub fn without(self, i: usize) -> Self {
        ElementSet(self.0 & !(1u64 << i))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: Self) -> Self {
        ElementSet(self.0 | other.0)
    }

    pub fn intersection(self, other: Self) -> Self {
        ElementSet(self.0 & other.0)
    }

    pub fn difference(self, other: Self) -> Self {
        ElementSet(self.0 & !other.0)
    }

    pub fn is_subset(self, other: Self) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_strict_subset(self, other: Self) -> bool {
        self.is_subset(other) && self != other
    }

    pub fn is_disjoint(self, other: Self) -> bool {
        self.0 & other.0 == 0
    }

    pub fn meets(self, other: Self) -> bool {
        !self.is_disjoint(other)
    }

    /// Smallest member, if any.
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    /// Members in ascending order.
    pub fn iter(self) -> Iter {
        Iter(self.0)
    }

    /// Every subset of `self`, in increasing bit-mask order.
    pub fn subsets(self) -> Subsets {
        Subsets {
            ground: self.0,
            next: Some(0),
        }
    }

    /// The `k`-element subsets of `self` in lexicographic index order.
    pub fn combinations(self, k: usize) -> Combinations {
        Combinations::new(self, k)
    }

    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| {
            let diff = self.0 ^ other.0;
            if diff == 0 {
                Ordering::Equal
            } else if self.0 & diff & diff.wrapping_neg() != 0 {
                // the lowest differing index belongs to `self`
                Ordering::Less
            } else {
                Ordering::Greater
            }
        })
    }
}

impl Ord for ElementSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.canonical_cmp(other)
    }
}

impl PartialOrd for ElementSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl BitOr for ElementSet {
    type Output = ElementSet;
    fn bitor(self, rhs: Self) -> Self {
        self.union(rhs)
    }
}

impl BitAnd for ElementSet {
    type Output = ElementSet;
    fn bitand(self, rhs: Self) -> Self {
        self.intersection(rhs)
    }
}

impl Sub for ElementSet {
    type Output = ElementSet;
    fn sub(self, rhs: Self) -> Self {
        self.difference(rhs)
    }
}

impl FromIterator<usize> for ElementSet {
    fn from_iter<T: IntoIterator<Item = usize>>(iter: T) -> Self {
        iter.into_iter()
            .fold(ElementSet::EMPTY, |acc, i| acc.with(i))
    }
}

impl IntoIterator for ElementSet {
    type Item = usize;
    type IntoIter = Iter;
    fn into_iter(self) -> Iter {
        self.iter()
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

pub struct Iter(u64);

impl Iterator for Iter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Iter {}

pub struct Subsets {
    ground: u64,
    next: Option<u64>,
}

impl Iterator for Subsets {
    type Item = ElementSet;

    fn next(&mut self) -> Option<ElementSet> {
        let cur = self.next?;
        // standard submask successor: (cur - ground) & ground
        let succ = cur.wrapping_sub(self.ground) & self.ground;
        self.next = (succ != 0).then_some(succ);
        Some(ElementSet(cur))
    }
}

pub struct Combinations {
    pool: Vec<usize>,
    idx: Vec<usize>,
    done: bool,
}

impl Combinations {
    fn new(ground: ElementSet, k: usize) -> Self {
        let pool: Vec<usize> = ground.iter().collect();
        let done = k > pool.len();
        Combinations {
            pool,
            idx: (0..k).collect(),
            done,
        }
    }
}

impl Iterator for Combinations {
    type Item = ElementSet;

    fn next(&mut self) -> Option<ElementSet> {
        if self.done {
            return None;
        }
        let out: ElementSet = self.idx.iter().map(|&i| self.pool[i]).collect();
        let n = self.pool.len();
        let k = self.idx.len();
        let mut i = k;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.idx[i] != i + n - k {
                self.idx[i] += 1;
                for j in i + 1..k {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    }
}
