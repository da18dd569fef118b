//! Partition matroids: a set is independent when it meets every class in
//! at most one element.

use crate::error::{Error, Result};
use crate::matroid::Matroid;
use crate::universe::Partition;
use crate::ElementSet;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionMatroid {
    n: usize,
    classes: Vec<ElementSet>,
    class_of: Vec<usize>,
}

impl PartitionMatroid {
    /// Classes must be nonempty, pairwise disjoint and cover `{0, .., n-1}`.
    /// They are kept in order of their least element.
    pub fn new(n: usize, mut classes: Vec<ElementSet>) -> Result<Self> {
        classes.sort_by_key(|c| c.first());
        let mut seen = ElementSet::EMPTY;
        let mut class_of = vec![usize::MAX; n];
        for (i, &c) in classes.iter().enumerate() {
            if c.is_empty() {
                return Err(Error::InvalidSystem("empty class".into()));
            }
            if let Some(j) = classes[..i].iter().position(|&d| d.meets(c)) {
                return Err(Error::NotAPartition(j, i));
            }
            for x in c.iter() {
                if x >= n {
                    return Err(Error::InvalidSystem(format!(
                        "class element {x} outside universe"
                    )));
                }
                class_of[x] = i;
            }
            seen = seen | c;
        }
        if seen != ElementSet::full(n) {
            return Err(Error::InvalidSystem(format!(
                "classes miss elements {:?}",
                ElementSet::full(n) - seen
            )));
        }
        Ok(PartitionMatroid {
            n,
            classes,
            class_of,
        })
    }

    pub fn of_partition(p: &Partition) -> Self {
        PartitionMatroid::new(p.n(), p.classes().to_vec())
            .expect("a partition's blocks are valid classes")
    }

    pub fn classes(&self) -> &[ElementSet] {
        &self.classes
    }

    pub fn class_of(&self, x: usize) -> ElementSet {
        self.classes[self.class_of[x]]
    }

    /// Union of the classes meeting `x`.
    pub fn upper(&self, x: ElementSet) -> ElementSet {
        self.classes
            .iter()
            .filter(|c| c.meets(x))
            .fold(ElementSet::EMPTY, |acc, &c| acc | c)
    }

    /// Union of the classes inside `x`.
    pub fn lower(&self, x: ElementSet) -> ElementSet {
        self.classes
            .iter()
            .filter(|c| c.is_subset(x))
            .fold(ElementSet::EMPTY, |acc, &c| acc | c)
    }

    /// The product of the class sizes.
    pub fn base_count(&self) -> u64 {
        self.classes.iter().map(|c| c.len() as u64).product()
    }

    /// Every two-element subset of a class, in canonical order.
    pub fn circuits(&self) -> Vec<ElementSet> {
        let mut out: Vec<ElementSet> = self
            .classes
            .iter()
            .flat_map(|c| c.combinations(2))
            .collect();
        out.sort();
        out
    }

    pub fn is_dependent(&self, x: ElementSet) -> bool {
        self.classes.iter().any(|c| (*c & x).len() >= 2)
    }
}

impl Matroid for PartitionMatroid {
    fn n(&self) -> usize {
        self.n
    }

    fn rank(&self, x: ElementSet) -> usize {
        self.classes.iter().filter(|c| c.meets(x)).count()
    }

    fn is_independent(&self, x: ElementSet) -> bool {
        !self.is_dependent(x)
    }

    fn closure(&self, x: ElementSet) -> ElementSet {
        self.upper(x)
    }
}

/// `R*(X)`: union of the classes of `p` meeting `x`.
pub fn partition_upper(p: &Partition, x: ElementSet) -> ElementSet {
    p.classes()
        .iter()
        .filter(|c| c.meets(x))
        .fold(ElementSet::EMPTY, |acc, &c| acc | c)
}

/// `R_*(X)`: union of the classes of `p` contained in `x`.
pub fn partition_lower(p: &Partition, x: ElementSet) -> ElementSet {
    p.classes()
        .iter()
        .filter(|c| c.is_subset(x))
        .fold(ElementSet::EMPTY, |acc, &c| acc | c)
}
