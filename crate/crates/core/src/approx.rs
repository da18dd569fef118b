//! Covering-based upper approximations and the partitions they induce.
//!
//! Everything factors through two per-element neighbourhoods:
//! `I(x)`, the union of the blocks containing `x`, and `N(x)`, their
//! intersection. With those,
//!
//! * `SH(X) = ∪{I(x) : x ∈ X}`
//! * `XH(X) = {x : N(x) ∩ X ≠ ∅}`
//! * `VH(X) = ∪{N(x) : N(x) ∩ X ≠ ∅}`
//!
//! Each operator is the closure operator of a matroid exactly when its
//! class family (`I(x)`, `N(x)` or `VH({x})` respectively) is a partition,
//! and that matroid is then the partition matroid on those classes.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition_matroid::PartitionMatroid;
use crate::universe::Covering;
use crate::ElementSet;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NeighborhoodTable {
    n: usize,
    indiscernible: Vec<ElementSet>,
    neighborhood: Vec<ElementSet>,
    minimal_description: Vec<Vec<usize>>,
    block_count: Vec<usize>,
}

impl NeighborhoodTable {
    pub fn new(c: &Covering) -> Self {
        let n = c.n();
        let blocks = c.blocks();
        let mut indiscernible = Vec::with_capacity(n);
        let mut neighborhood = Vec::with_capacity(n);
        let mut minimal_description = Vec::with_capacity(n);
        let mut block_count = Vec::with_capacity(n);
        for x in 0..n {
            let containing: Vec<usize> = c.blocks_containing(x).collect();
            indiscernible.push(
                containing
                    .iter()
                    .fold(ElementSet::EMPTY, |acc, &k| acc | blocks[k]),
            );
            neighborhood.push(
                containing
                    .iter()
                    .fold(c.ground(), |acc, &k| acc & blocks[k]),
            );
            minimal_description.push(
                containing
                    .iter()
                    .copied()
                    .filter(|&k| {
                        !containing
                            .iter()
                            .any(|&j| blocks[j].is_strict_subset(blocks[k]))
                    })
                    .collect(),
            );
            block_count.push(containing.len());
        }
        NeighborhoodTable {
            n,
            indiscernible,
            neighborhood,
            minimal_description,
            block_count,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `I(x)`.
    pub fn indiscernible(&self, x: usize) -> ElementSet {
        self.indiscernible[x]
    }

    /// `N(x)`.
    pub fn neighborhood(&self, x: usize) -> ElementSet {
        self.neighborhood[x]
    }

    /// `Md(x)`: indices of the inclusion-minimal blocks containing `x`.
    pub fn minimal_description(&self, x: usize) -> &[usize] {
        &self.minimal_description[x]
    }

    /// Number of blocks containing `x`.
    pub fn block_count(&self, x: usize) -> usize {
        self.block_count[x]
    }

    pub fn apply(&self, kind: OperatorKind, x: ElementSet) -> ElementSet {
        match kind {
            OperatorKind::SH => x
                .iter()
                .fold(ElementSet::EMPTY, |acc, y| acc | self.indiscernible[y]),
            OperatorKind::XH => (0..self.n)
                .filter(|&y| self.neighborhood[y].meets(x))
                .collect(),
            OperatorKind::VH => self
                .neighborhood
                .iter()
                .filter(|nb| nb.meets(x))
                .fold(ElementSet::EMPTY, |acc, &nb| acc | nb),
        }
    }

    /// The per-element class sets whose partition property decides `kind`:
    /// `I(x)`, `N(x)` or `VH({x})`, indexed by element.
    pub fn class_sets(&self, kind: OperatorKind) -> Vec<ElementSet> {
        match kind {
            OperatorKind::SH => self.indiscernible.clone(),
            OperatorKind::XH => self.neighborhood.clone(),
            OperatorKind::VH => (0..self.n)
                .map(|x| self.apply(OperatorKind::VH, ElementSet::singleton(x)))
                .collect(),
        }
    }

    /// Distinct class sets, ordered by least element then canonically.
    pub fn distinct_classes(&self, kind: OperatorKind) -> Vec<ElementSet> {
        let mut sets = self.class_sets(kind);
        sets.sort_by(|a, b| a.first().cmp(&b.first()).then(a.cmp(b)));
        sets.dedup();
        sets
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum OperatorKind {
    SH,
    XH,
    VH,
}

impl OperatorKind {
    pub const ALL: [OperatorKind; 3] = [OperatorKind::SH, OperatorKind::XH, OperatorKind::VH];

    pub fn name(self) -> &'static str {
        match self {
            OperatorKind::SH => "SH",
            OperatorKind::XH => "XH",
            OperatorKind::VH => "VH",
        }
    }
}

impl fmt::Display for OperatorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for OperatorKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "sh" => Ok(OperatorKind::SH),
            "xh" => Ok(OperatorKind::XH),
            "vh" => Ok(OperatorKind::VH),
            other => Err(format!(
                "unknown operator `{other}` (expected sh, xh or vh)"
            )),
        }
    }
}

pub fn neighborhood_table(c: &Covering) -> NeighborhoodTable {
    NeighborhoodTable::new(c)
}

/// Evaluates one operator on `x`. Builds a fresh table; reuse a
/// [`NeighborhoodTable`] for repeated queries.
pub fn apply(c: &Covering, kind: OperatorKind, x: ElementSet) -> ElementSet {
    NeighborhoodTable::new(c).apply(kind, x)
}

/// Whether the distinct sets in `sets` are pairwise disjoint.
pub fn forms_partition(sets: &[ElementSet]) -> bool {
    let mut distinct = sets.to_vec();
    distinct.sort();
    distinct.dedup();
    let mut seen = ElementSet::EMPTY;
    for s in distinct {
        if seen.meets(s) {
            return false;
        }
        seen = seen | s;
    }
    true
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosureVerdict {
    pub operator: OperatorKind,
    pub holds: bool,
    /// Distinct class sets of the criterion.
    pub classes: Vec<ElementSet>,
    /// A concrete axiom violation when `holds` is false and one was found
    /// within the search budget.
    pub witness: Option<Witness>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum Witness {
    /// `H(H(set)) ≠ H(set)`.
    Idempotence {
        set: ElementSet,
        image: ElementSet,
        image_of_image: ElementSet,
    },
    /// `y ∈ H(set ∪ {x}) − H(set)` but `x ∉ H(set ∪ {y})`.
    Exchange { set: ElementSet, x: usize, y: usize },
}

/// Subsets examined by the witness search before giving up.
pub const WITNESS_SEARCH_BUDGET: usize = 1 << 20;

/// Decides whether `kind` is a matroid closure operator for `c` by the
/// partition criterion, searching for an axiom violation when it is not.
pub fn is_closure_operator(c: &Covering, kind: OperatorKind) -> ClosureVerdict {
    let table = NeighborhoodTable::new(c);
    let holds = forms_partition(&table.class_sets(kind));
    ClosureVerdict {
        operator: kind,
        holds,
        classes: table.distinct_classes(kind),
        witness: if holds {
            None
        } else {
            find_witness(&table, kind, c.ground())
        },
    }
}

/// First idempotence or exchange violation, scanning sets by size and
/// checking idempotence before exchange at each set.
pub fn find_witness(
    table: &NeighborhoodTable,
    kind: OperatorKind,
    ground: ElementSet,
) -> Option<Witness> {
    let h = |x: ElementSet| table.apply(kind, x);
    let mut examined = 0;
    for size in 0..=ground.len() {
        for set in ground.combinations(size) {
            examined += 1;
            if examined > WITNESS_SEARCH_BUDGET {
                return None;
            }
            let image = h(set);
            let image_of_image = h(image);
            if image_of_image != image {
                return Some(Witness::Idempotence {
                    set,
                    image,
                    image_of_image,
                });
            }
            for x in (ground - set).iter() {
                let with_x = h(set.with(x));
                for y in (with_x - image).iter() {
                    if y != x && !h(set.with(y)).contains(x) {
                        return Some(Witness::Exchange { set, x, y });
                    }
                }
            }
        }
    }
    None
}

/// Whenever `x, z` share a block and `y, z` share a block, `x, y` share one.
pub fn tra_condition(c: &Covering) -> bool {
    let n = c.n();
    let share = |a: usize, b: usize| c.blocks().iter().any(|k| k.contains(a) && k.contains(b));
    (0..n).all(|z| (0..n).all(|x| !share(x, z) || (0..n).all(|y| !share(y, z) || share(x, y))))
}

/// Within every block, all members lie in the same number of blocks.
pub fn equ_condition(c: &Covering) -> bool {
    let table = NeighborhoodTable::new(c);
    c.blocks().iter().all(|k| {
        let mut counts = k.iter().map(|x| table.block_count(x));
        let first = counts.next();
        counts.all(|n| Some(n) == first)
    })
}

/// The partition matroid whose closure is `kind`, when it is one.
pub fn induced_partition_matroid(c: &Covering, kind: OperatorKind) -> Result<PartitionMatroid> {
    let table = NeighborhoodTable::new(c);
    if !forms_partition(&table.class_sets(kind)) {
        return Err(Error::NotAClosureOperator(kind.name()));
    }
    PartitionMatroid::new(c.n(), table.distinct_classes(kind))
}

/// `{X : ∀x ∈ X, x ∉ H(X − {x})}`, enumerated over every subset.
pub fn operator_independent_sets(c: &Covering, kind: OperatorKind) -> Vec<ElementSet> {
    let table = NeighborhoodTable::new(c);
    let mut out: Vec<ElementSet> = c
        .ground()
        .subsets()
        .filter(|&x| {
            x.iter()
                .all(|y| !table.apply(kind, x.without(y)).contains(y))
        })
        .collect();
    out.sort();
    out
}
