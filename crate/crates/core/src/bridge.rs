//! Matroids induced by a lattice of sets with a submodular bound.
//!
//! Given sets `L` closed under intersection and `f : L → ℕ` submodular with
//! `f(∅) = 0`, the sets `X` with `|X ∩ T| ≤ f(T)` for every `T ∈ L` are the
//! independent sets of a matroid whose rank is
//! `r(X) = min_{Y ∈ L} (f(Y) + |X − Y|)`.
//!
//! Fed the flat lattice of a matroid with its own rank function, this
//! recovers the matroid.

use crate::error::{Error, Result};
use crate::lattice::FlatLattice;
use crate::matroid::Matroid;
use crate::ElementSet;

/// Pairs checked for submodularity before switching to a strided sample.
const FULL_PAIR_CHECK: usize = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubmodularSystem {
    n: usize,
    sets: Vec<ElementSet>,
    values: Vec<usize>,
}

impl SubmodularSystem {
    /// Validates and stores `(set, f(set))` pairs over `{0, .., n-1}`.
    pub fn new(n: usize, mut pairs: Vec<(ElementSet, usize)>) -> Result<Self> {
        pairs.sort();
        pairs.dedup();
        for w in pairs.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(Error::InvalidSystem(format!("two values for {:?}", w[0].0)));
            }
        }
        let (sets, values): (Vec<_>, Vec<_>) = pairs.into_iter().unzip();
        let s = SubmodularSystem { n, sets, values };
        s.validate()?;
        Ok(s)
    }

    /// The flats of `l` valued by the rank of `m`, plus `∅ ↦ 0` when the
    /// bottom flat contains loops.
    pub fn from_lattice<M: Matroid + ?Sized>(l: &FlatLattice, m: &M) -> Result<Self> {
        let mut pairs: Vec<(ElementSet, usize)> =
            l.flats().iter().map(|&f| (f, m.rank(f))).collect();
        if !l.contains(ElementSet::EMPTY) {
            pairs.push((ElementSet::EMPTY, 0));
        }
        SubmodularSystem::new(m.n(), pairs)
    }

    fn validate(&self) -> Result<()> {
        let ground = ElementSet::full(self.n);
        if self.value(ElementSet::EMPTY) != Some(0) {
            return Err(Error::InvalidSystem(
                "the empty set must be present with value 0".into(),
            ));
        }
        if self.value(ground).is_none() {
            return Err(Error::InvalidSystem(
                "the ground set must be present".into(),
            ));
        }
        if let Some(&s) = self.sets.iter().find(|s| !s.is_subset(ground)) {
            return Err(Error::InvalidSystem(format!(
                "{s:?} is not inside the ground set"
            )));
        }
        let len = self.sets.len();
        for i in 0..len {
            for j in i + 1..len {
                let meet = self.sets[i] & self.sets[j];
                if self.value(meet).is_none() {
                    return Err(Error::InvalidSystem(format!(
                        "not closed under intersection: {:?} ∩ {:?}",
                        self.sets[i], self.sets[j]
                    )));
                }
            }
        }
        let stride = (len * len).div_ceil(FULL_PAIR_CHECK).max(1);
        for i in 0..len {
            for j in (i..len).step_by(stride) {
                let (x, y) = (self.sets[i], self.sets[j]);
                let join = self.smallest_member_containing(x | y);
                let lhs = self.values[i] + self.values[j];
                let rhs = self.value(join).unwrap_or(0) + self.value(x & y).unwrap_or(0);
                if lhs < rhs {
                    return Err(Error::InvalidSystem(format!(
                        "f is not submodular on {x:?}, {y:?}"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn sets(&self) -> &[ElementSet] {
        &self.sets
    }

    pub fn value(&self, s: ElementSet) -> Option<usize> {
        self.sets.binary_search(&s).ok().map(|i| self.values[i])
    }

    fn smallest_member_containing(&self, s: ElementSet) -> ElementSet {
        self.sets
            .iter()
            .filter(|t| s.is_subset(**t))
            .fold(ElementSet::full(self.n), |acc, &t| acc & t)
    }

    fn pairs(&self) -> impl Iterator<Item = (ElementSet, usize)> + '_ {
        self.sets.iter().copied().zip(self.values.iter().copied())
    }
}

/// `|X ∩ T| ≤ f(T)` for every `T` in the system.
pub fn independence_from_lattice(s: &SubmodularSystem, x: ElementSet) -> bool {
    s.pairs().all(|(t, f)| (x & t).len() <= f)
}

/// `min_{Y} (f(Y) + |X − Y|)`.
pub fn induced_rank(s: &SubmodularSystem, x: ElementSet) -> usize {
    s.pairs()
        .map(|(y, f)| f + (x - y).len())
        .min()
        .expect("a validated system is nonempty")
}

/// The matroid whose independent sets satisfy every bound of `s`.
pub fn matroid_from_lattice(s: SubmodularSystem) -> LatticeMatroid {
    LatticeMatroid { system: s }
}

/// `X` is independent in `m` iff `|X ∩ Y| ≤ r(Y)` for every flat `Y` of `l`.
pub fn independent_iff_flat_bound<M: Matroid + ?Sized>(
    m: &M,
    l: &FlatLattice,
    x: ElementSet,
) -> bool {
    l.flats().iter().all(|&y| (x & y).len() <= m.rank(y))
}

/// Independence predicate over a [`SubmodularSystem`]; nothing is materialised.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeMatroid {
    system: SubmodularSystem,
}

impl LatticeMatroid {
    pub fn system(&self) -> &SubmodularSystem {
        &self.system
    }

    /// Size of a maximal independent subset of `x` grown greedily in index
    /// order; equals the rank when the predicate really is a matroid.
    pub fn greedy_rank(&self, x: ElementSet) -> usize {
        x.iter()
            .fold(ElementSet::EMPTY, |acc, e| {
                let next = acc.with(e);
                if independence_from_lattice(&self.system, next) {
                    next
                } else {
                    acc
                }
            })
            .len()
    }
}

impl Matroid for LatticeMatroid {
    fn n(&self) -> usize {
        self.system.n
    }

    fn rank(&self, x: ElementSet) -> usize {
        induced_rank(&self.system, x)
    }

    fn is_independent(&self, x: ElementSet) -> bool {
        independence_from_lattice(&self.system, x)
    }
}
