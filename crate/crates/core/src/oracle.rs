//! Brute-force ground truth for small inputs.
//!
//! Nothing here shares code with the main algorithms: independence is an
//! exhaustive search for an injective assignment, ranks and closures come
//! from scanning every subset, and the approximation operators are
//! evaluated straight from the blocks. Every function refuses inputs over
//! its [`OracleBudget`].

use std::collections::{BTreeSet, HashSet};

use crate::approx::OperatorKind;
use crate::error::{Error, Result};
use crate::universe::{Covering, SetFamily};
use crate::ElementSet;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleBudget {
    pub max_universe: usize,
    /// Largest number of subsets a single scan may visit.
    pub max_subsets: usize,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget {
            max_universe: 7,
            max_subsets: 1 << 7,
        }
    }
}

impl OracleBudget {
    pub fn check(&self, n: usize) -> Result<()> {
        if n > self.max_universe {
            return Err(Error::GuardExceeded {
                what: "oracle universe size",
                limit: self.max_universe,
                reached: n,
            });
        }
        let subsets = 1usize << n;
        if subsets > self.max_subsets {
            return Err(Error::GuardExceeded {
                what: "oracle subset count",
                limit: self.max_subsets,
                reached: subsets,
            });
        }
        Ok(())
    }
}

/// Brute-force view of one set family.
#[derive(Debug, Clone)]
pub struct Oracle<'a> {
    family: &'a SetFamily,
}

impl<'a> Oracle<'a> {
    pub fn new(family: &'a SetFamily, budget: &OracleBudget) -> Result<Self> {
        budget.check(family.n())?;
        Ok(Oracle { family })
    }

    fn all_subsets(&self) -> Vec<ElementSet> {
        (0u64..1 << self.family.n())
            .map(ElementSet::from_bits)
            .collect()
    }

    /// Tries every injective assignment of the members of `x` to distinct
    /// blocks containing them.
    pub fn independent(&self, x: ElementSet) -> bool {
        let members: Vec<usize> = x.iter().collect();
        let mut used = vec![false; self.family.len()];
        self.assign(&members, &mut used)
    }

    fn assign(&self, members: &[usize], used: &mut [bool]) -> bool {
        let Some((&first, rest)) = members.split_first() else {
            return true;
        };
        for (k, block) in self.family.blocks().iter().enumerate() {
            if !used[k] && block.contains(first) {
                used[k] = true;
                let ok = self.assign(rest, used);
                used[k] = false;
                if ok {
                    return true;
                }
            }
        }
        false
    }

    /// Largest independent subset of `x`, by scanning all of its subsets.
    pub fn rank(&self, x: ElementSet) -> usize {
        self.all_subsets()
            .into_iter()
            .filter(|y| y.is_subset(x) && self.independent(*y))
            .map(|y| y.len())
            .max()
            .unwrap_or(0)
    }

    pub fn closure(&self, x: ElementSet) -> ElementSet {
        let r = self.rank(x);
        (0..self.family.n())
            .filter(|&a| x.contains(a) || self.rank(x.with(a)) == r)
            .collect()
    }

    /// All fixpoints of the closure, in canonical order.
    pub fn flats(&self) -> Vec<ElementSet> {
        let ranks: Vec<usize> = self
            .all_subsets()
            .into_iter()
            .map(|x| self.rank(x))
            .collect();
        let rank = |x: ElementSet| ranks[x.bits() as usize];
        let mut out: Vec<ElementSet> = self
            .all_subsets()
            .into_iter()
            .filter(|&x| (0..self.family.n()).all(|a| x.contains(a) || rank(x.with(a)) > rank(x)))
            .collect();
        out.sort();
        out
    }

    /// All independent sets, in canonical order.
    pub fn independent_sets(&self) -> Vec<ElementSet> {
        let mut out: Vec<ElementSet> = self
            .all_subsets()
            .into_iter()
            .filter(|&x| self.independent(x))
            .collect();
        out.sort();
        out
    }

    /// Geometric-lattice axioms for [`Oracle::flats`] under inclusion,
    /// checked pair by pair and chain by chain.
    pub fn lattice_is_geometric(&self) -> bool {
        let flats = self.flats();
        let rank = |x: ElementSet| self.rank(x);
        lattice_axioms_by_inclusion(&flats, rank)
    }
}

/// The lattice axioms on a family of sets ordered by inclusion, with `h` as
/// the height: a unique bottom, meets and joins exist, all maximal chains
/// from the bottom to any element have the same length `h`, the
/// semimodular inequality, and every element a join of atoms.
pub fn lattice_axioms_by_inclusion(sets: &[ElementSet], h: impl Fn(ElementSet) -> usize) -> bool {
    let members: HashSet<ElementSet> = sets.iter().copied().collect();
    let bottom = sets.iter().fold(
        sets.iter().fold(ElementSet::EMPTY, |a, &s| a | s),
        |a, &s| a & s,
    );
    if !members.contains(&bottom) {
        return false;
    }
    let lub = |x: ElementSet| {
        let uppers: Vec<ElementSet> = sets.iter().copied().filter(|s| x.is_subset(*s)).collect();
        let least = uppers.iter().fold(uppers.first().copied()?, |a, &s| a & s);
        members.contains(&least).then_some(least)
    };
    for &x in sets {
        for &y in sets {
            if !members.contains(&(x & y)) {
                return false;
            }
            let Some(j) = lub(x | y) else { return false };
            if h(x) + h(y) < h(j) + h(x & y) {
                return false;
            }
        }
    }
    // chain lengths: every cover (no member strictly between) must raise h by one
    for &lo in sets {
        for &hi in sets {
            if lo.is_strict_subset(hi)
                && !sets
                    .iter()
                    .any(|&m| lo.is_strict_subset(m) && m.is_strict_subset(hi))
                && h(hi) != h(lo) + 1
            {
                return false;
            }
        }
    }
    if h(bottom) != 0 {
        return false;
    }
    let atoms: Vec<ElementSet> = sets.iter().copied().filter(|&s| h(s) == 1).collect();
    sets.iter().all(|&x| {
        let below = atoms
            .iter()
            .filter(|a| a.is_subset(x))
            .fold(bottom, |acc, &a| acc | a);
        lub(below) == Some(x)
    })
}

/// An operator evaluated literally from the blocks, with `N(x)` recomputed
/// on every call.
pub fn brute_operator(c: &Covering, kind: OperatorKind, x: ElementSet) -> ElementSet {
    let blocks = c.blocks();
    let n_of = |y: usize| {
        blocks
            .iter()
            .filter(|k| k.contains(y))
            .fold(c.ground(), |acc, &k| acc & k)
    };
    match kind {
        OperatorKind::SH => blocks
            .iter()
            .filter(|k| k.meets(x))
            .fold(ElementSet::EMPTY, |acc, &k| acc | k),
        OperatorKind::XH => (0..c.n()).filter(|&y| n_of(y).meets(x)).collect(),
        OperatorKind::VH => (0..c.n())
            .map(n_of)
            .filter(|nb| nb.meets(x))
            .fold(ElementSet::EMPTY, |acc, nb| acc | nb),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomReport {
    pub extensive: bool,
    pub monotone: bool,
    pub idempotent: bool,
    pub exchange: bool,
    /// First failing instance, described in words.
    pub witness: Option<String>,
}

impl AxiomReport {
    pub fn holds(&self) -> bool {
        self.extensive && self.monotone && self.idempotent && self.exchange
    }
}

/// Checks the matroid closure axioms for `kind` on every subset, pair of
/// nested subsets, and exchange triple.
pub fn brute_operator_axioms(
    c: &Covering,
    kind: OperatorKind,
    budget: &OracleBudget,
) -> Result<AxiomReport> {
    budget.check(c.n())?;
    let n = c.n();
    let all: Vec<ElementSet> = (0u64..1 << n).map(ElementSet::from_bits).collect();
    let image: Vec<ElementSet> = all.iter().map(|&x| brute_operator(c, kind, x)).collect();
    let h = |x: ElementSet| image[x.bits() as usize];
    let mut report = AxiomReport {
        extensive: true,
        monotone: true,
        idempotent: true,
        exchange: true,
        witness: None,
    };
    let note = |report: &mut AxiomReport, msg: String| {
        if report.witness.is_none() {
            report.witness = Some(msg);
        }
    };
    for &x in &all {
        if !x.is_subset(h(x)) {
            report.extensive = false;
            note(&mut report, format!("not extensive at {x:?}"));
        }
        if h(h(x)) != h(x) {
            report.idempotent = false;
            note(&mut report, format!("not idempotent at {x:?}"));
        }
        for &y in &all {
            if x.is_subset(y) && !h(x).is_subset(h(y)) {
                report.monotone = false;
                note(&mut report, format!("not monotone at {x:?} ⊆ {y:?}"));
            }
        }
        for a in 0..n {
            for b in 0..n {
                if h(x.with(a)).contains(b) && !h(x).contains(b) && !h(x.with(b)).contains(a) {
                    report.exchange = false;
                    note(
                        &mut report,
                        format!("exchange fails at {x:?} with {a}, {b}"),
                    );
                }
            }
        }
    }
    Ok(report)
}

/// Every block multiset reachable as an irreducible end state, over all
/// orders of removing reducible blocks one at a time.
pub fn brute_reduct_fixpoints(c: &Covering) -> BTreeSet<Vec<ElementSet>> {
    let mut ends = BTreeSet::new();
    let mut seen = HashSet::new();
    explore(c.blocks().to_vec(), &mut seen, &mut ends);
    ends
}

fn explore(
    blocks: Vec<ElementSet>,
    seen: &mut HashSet<Vec<ElementSet>>,
    ends: &mut BTreeSet<Vec<ElementSet>>,
) {
    let mut key = blocks.clone();
    key.sort();
    if !seen.insert(key.clone()) {
        return;
    }
    let reducible: Vec<usize> = (0..blocks.len())
        .filter(|&i| {
            let union = blocks
                .iter()
                .enumerate()
                .filter(|&(j, b)| j != i && b.is_subset(blocks[i]))
                .fold(ElementSet::EMPTY, |acc, (_, &b)| acc | b);
            union == blocks[i]
        })
        .collect();
    if reducible.is_empty() {
        ends.insert(key);
        return;
    }
    for i in reducible {
        let mut next = blocks.clone();
        next.remove(i);
        explore(next, seen, ends);
    }
}
