//! The transversal matroid of a set family.
//!
//! A set is independent when its members can be assigned to pairwise
//! distinct blocks containing them (a partial transversal), so every query
//! reduces to a maximum matching in the element/block incidence graph.

use std::collections::HashMap;
use std::fmt;
use std::sync::RwLock;

use crate::error::Result;
use crate::matching::{maximum_matching, Matching};
use crate::matroid::{self, Limits, Matroid};
use crate::universe::{Covering, SetFamily};
use crate::ElementSet;

pub struct TransversalMatroid {
    family: SetFamily,
    adjacency: Vec<Vec<usize>>,
    rank_cache: RwLock<HashMap<ElementSet, usize>>,
}

impl TransversalMatroid {
    pub fn new(family: SetFamily) -> Self {
        let adjacency = (0..family.n())
            .map(|x| family.blocks_containing(x).collect())
            .collect();
        TransversalMatroid {
            family,
            adjacency,
            rank_cache: RwLock::new(HashMap::new()),
        }
    }

    pub fn of_covering(c: &Covering) -> Self {
        TransversalMatroid::new(c.family().clone())
    }

    pub fn family(&self) -> &SetFamily {
        &self.family
    }

    /// A maximum matching of the members of `x` into blocks.
    ///
    /// `x` is independent exactly when the matching saturates it, in which
    /// case `block_of` is a transversal witness.
    pub fn matching(&self, x: ElementSet) -> Matching {
        maximum_matching(&self.adjacency, self.family.len(), x)
    }

    /// `cl(∅)`: the loops, i.e. elements lying in no block.
    ///
    /// Empty exactly when the family covers the universe.
    pub fn closure_of_empty(&self) -> ElementSet {
        self.closure(ElementSet::EMPTY)
    }

    pub fn bases(&self, limits: &Limits) -> Result<Vec<ElementSet>> {
        matroid::bases(self, limits)
    }

    pub fn circuits(&self, limits: &Limits) -> Result<Vec<ElementSet>> {
        matroid::circuits(self, limits)
    }

    pub fn loops_and_parallel_classes(&self) -> (ElementSet, Vec<ElementSet>) {
        matroid::loops_and_parallel_classes(self)
    }

    /// Whether the matroid has neither loops nor parallel pairs.
    ///
    /// For a covering with distinct blocks this is read off the A/B
    /// decomposition (every `A_i` a singleton); otherwise it falls back to
    /// the direct pair test.
    pub fn is_simple(&self) -> bool {
        match Covering::new(self.family.clone()) {
            Ok(c) if c.dropped_duplicates().is_empty() => ABDecomposition::of(&c).all_singletons(),
            _ => matroid::is_simple(self),
        }
    }

    fn compute_rank(&self, x: ElementSet) -> usize {
        self.matching(x).size
    }
}

impl Matroid for TransversalMatroid {
    fn n(&self) -> usize {
        self.family.n()
    }

    fn rank(&self, x: ElementSet) -> usize {
        if let Some(&r) = self.rank_cache.read().expect("rank cache poisoned").get(&x) {
            return r;
        }
        let r = self.compute_rank(x);
        self.rank_cache
            .write()
            .expect("rank cache poisoned")
            .insert(x, r);
        r
    }

    fn is_independent(&self, x: ElementSet) -> bool {
        x.len() <= self.family.len() && self.rank(x) == x.len()
    }
}

impl Clone for TransversalMatroid {
    fn clone(&self) -> Self {
        TransversalMatroid::new(self.family.clone())
    }
}

impl fmt::Debug for TransversalMatroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TransversalMatroid")
            .field("family", &self.family)
            .finish_non_exhaustive()
    }
}

/// Elements private to one block (`A_i = K_i − ∪_{j≠i} K_j`, nonempty ones
/// only) and the elements shared by two or more blocks (`B`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ABDecomposition {
    /// `(block index, A_i)` in block order.
    pub a_parts: Vec<(usize, ElementSet)>,
    pub b_part: ElementSet,
}

impl ABDecomposition {
    pub fn of(c: &Covering) -> Self {
        let blocks = c.blocks();
        let mut a_parts = Vec::new();
        for (i, &k) in blocks.iter().enumerate() {
            let others = blocks
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .fold(ElementSet::EMPTY, |acc, (_, &b)| acc | b);
            let private = k - others;
            if !private.is_empty() {
                a_parts.push((i, private));
            }
        }
        let covered = a_parts
            .iter()
            .fold(ElementSet::EMPTY, |acc, &(_, a)| acc | a);
        ABDecomposition {
            a_parts,
            b_part: c.ground() - covered,
        }
    }

    pub fn a_sets(&self) -> Vec<ElementSet> {
        self.a_parts.iter().map(|&(_, a)| a).collect()
    }

    /// `{A_i} ∪ {{x} : x ∈ B}`: a partition of the universe, and the atoms
    /// of the transversal flat lattice.
    pub fn predicted_atoms(&self) -> Vec<ElementSet> {
        let mut atoms = self.a_sets();
        atoms.extend(self.b_part.iter().map(ElementSet::singleton));
        atoms.sort();
        atoms
    }

    pub fn all_singletons(&self) -> bool {
        self.a_parts.iter().all(|&(_, a)| a.len() == 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::Universe;

    fn fam(universe: &[&str], blocks: &[&[&str]]) -> SetFamily {
        SetFamily::from_labels(universe, blocks).unwrap()
    }

    fn two_components() -> Covering {
        Covering::from_labels(
            &["1", "2", "3", "4", "5"],
            &[&["1", "2"], &["1", "3"], &["2", "3"], &["4", "5"]],
        )
        .unwrap()
    }

    fn s(u: &Universe, xs: &[&str]) -> ElementSet {
        u.set_of(xs).unwrap()
    }

    #[test]
    fn partial_transversals_of_an_uncovering_family() {
        let m = TransversalMatroid::new(fam(
            &["1", "2", "3", "4"],
            &[&["2", "3"], &["4"], &["2", "4"]],
        ));
        let u = m.family().universe().clone();
        assert!(m.is_independent(s(&u, &["2", "4"])));
        assert!(m.is_independent(ElementSet::EMPTY));
        assert!(m.is_independent(s(&u, &["2", "3", "4"])));
        assert_eq!(m.closure_of_empty(), s(&u, &["1"]));
    }

    #[test]
    fn two_component_covering_ranks_and_closures() {
        let c = two_components();
        let u = c.universe().clone();
        let m = TransversalMatroid::of_covering(&c);
        assert_eq!(m.rank(c.ground()), 4);
        assert_eq!(m.rank(ElementSet::EMPTY), 0);
        assert_eq!(m.rank(s(&u, &["4", "5"])), 1);
        assert_eq!(m.closure(s(&u, &["4"])), s(&u, &["4", "5"]));
        assert_eq!(m.closure_of_empty(), ElementSet::EMPTY);

        let limits = Limits::default();
        assert_eq!(m.circuits(&limits).unwrap(), vec![s(&u, &["4", "5"])]);
        let (loops, classes) = m.loops_and_parallel_classes();
        assert!(loops.is_empty());
        assert_eq!(classes, vec![s(&u, &["4", "5"])]);
        assert!(!m.is_simple());

        let ab = ABDecomposition::of(&c);
        assert_eq!(ab.a_parts, vec![(3, s(&u, &["4", "5"]))]);
        assert_eq!(ab.b_part, s(&u, &["1", "2", "3"]));
    }

    #[test]
    fn nine_element_covering() {
        let c = Covering::from_labels(
            &["a", "b", "c", "d", "e", "f", "g", "h", "i"],
            &[
                &["a", "b", "i"],
                &["a", "b", "c", "d", "e", "f"],
                &["f", "g", "h"],
                &["c", "d", "e", "g", "h", "i"],
            ],
        )
        .unwrap();
        let u = c.universe().clone();
        let m = TransversalMatroid::of_covering(&c);
        assert!(!m.is_independent(s(&u, &["a", "c", "f", "g", "i"])));
        assert_eq!(
            m.closure(s(&u, &["a", "b", "i"])),
            s(&u, &["a", "b", "c", "d", "e", "i"])
        );
        let ab = ABDecomposition::of(&c);
        assert!(ab.a_parts.is_empty());
        assert_eq!(ab.b_part, c.ground());
    }

    #[test]
    fn bases_of_small_partition_and_singleton() {
        let p = Covering::from_labels(&["1", "2", "3"], &[&["1", "2"], &["3"]]).unwrap();
        let u = p.universe().clone();
        let m = TransversalMatroid::of_covering(&p);
        let limits = Limits::default();
        assert_eq!(
            m.bases(&limits).unwrap(),
            vec![s(&u, &["1", "3"]), s(&u, &["2", "3"])]
        );
        let single = TransversalMatroid::new(fam(&["a"], &[&["a"]]));
        assert_eq!(
            single.bases(&limits).unwrap(),
            vec![ElementSet::singleton(0)]
        );

        let transversal =
            TransversalMatroid::new(fam(&["2", "3", "4"], &[&["2", "3"], &["4"], &["2", "4"]]));
        assert_eq!(
            transversal.bases(&limits).unwrap(),
            vec![ElementSet::full(3)]
        );
    }

    #[test]
    fn circuits_of_free_and_single_block_families() {
        let limits = Limits::default();
        let free = TransversalMatroid::new(fam(&["1", "2"], &[&["1"], &["2"]]));
        assert!(free.circuits(&limits).unwrap().is_empty());
        let one = TransversalMatroid::new(fam(&["1", "2"], &[&["1", "2"]]));
        assert_eq!(one.circuits(&limits).unwrap(), vec![ElementSet::full(2)]);
        let (_, classes) = one.loops_and_parallel_classes();
        assert_eq!(classes, vec![ElementSet::full(2)]);
    }

    #[test]
    fn simplicity() {
        let chain = Covering::from_labels(&["1", "2", "3"], &[&["1", "2"], &["2", "3"]]).unwrap();
        let m = TransversalMatroid::of_covering(&chain);
        assert!(m.is_simple());
        assert!(matroid::is_simple(&m));

        let p = Covering::from_labels(&["1", "2", "3"], &[&["1", "2"], &["3"]]).unwrap();
        assert!(!TransversalMatroid::of_covering(&p).is_simple());

        let singletons = Covering::from_labels(&["a", "b"], &[&["a"], &["b"]]).unwrap();
        assert!(TransversalMatroid::of_covering(&singletons).is_simple());

        // repeated blocks make the family free even though one deduplicated block would not be
        let doubled = TransversalMatroid::new(fam(&["1", "2"], &[&["1", "2"], &["1", "2"]]));
        assert!(doubled.is_simple());
    }

    #[test]
    fn partition_decomposition_has_empty_b() {
        let p = Covering::from_labels(&["a", "b", "c"], &[&["a", "b"], &["c"]]).unwrap();
        let ab = ABDecomposition::of(&p);
        assert_eq!(ab.a_sets(), p.blocks().to_vec());
        assert!(ab.b_part.is_empty());
    }
}
