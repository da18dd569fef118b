//! The rank-oracle view of a matroid shared by every concrete matroid here.

use crate::error::{Error, Result};
use crate::ElementSet;

/// A matroid on `{0, .., n-1}` given by its rank function.
///
/// Implementors must supply a rank function satisfying the usual axioms;
/// everything else has a definitional default.
pub trait Matroid {
    /// Size of the ground set.
    fn n(&self) -> usize;

    fn rank(&self, x: ElementSet) -> usize;

    fn ground(&self) -> ElementSet {
        ElementSet::full(self.n())
    }

    fn is_independent(&self, x: ElementSet) -> bool {
        self.rank(x) == x.len()
    }

    /// `{a : r(X) = r(X + a)}`.
    fn closure(&self, x: ElementSet) -> ElementSet {
        let r = self.rank(x);
        (self.ground() - x)
            .iter()
            .filter(|&a| self.rank(x.with(a)) == r)
            .fold(x, ElementSet::with)
    }

    fn is_flat(&self, x: ElementSet) -> bool {
        self.closure(x) == x
    }
}

impl<M: Matroid + ?Sized> Matroid for &M {
    fn n(&self) -> usize {
        (**self).n()
    }
    fn rank(&self, x: ElementSet) -> usize {
        (**self).rank(x)
    }
    fn is_independent(&self, x: ElementSet) -> bool {
        (**self).is_independent(x)
    }
    fn closure(&self, x: ElementSet) -> ElementSet {
        (**self).closure(x)
    }
}

/// Size bounds for exponential enumerations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest ground set for which bases and circuits are enumerated.
    pub max_enumeration_n: usize,
    /// Largest number of flats a lattice may have.
    pub max_lattice_size: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_enumeration_n: 20,
            max_lattice_size: 100_000,
        }
    }
}

impl Limits {
    pub fn check_enumeration(&self, n: usize) -> Result<()> {
        if n > self.max_enumeration_n {
            Err(Error::GuardExceeded {
                what: "ground set size for enumeration",
                limit: self.max_enumeration_n,
                reached: n,
            })
        } else {
            Ok(())
        }
    }
}

/// All bases, in canonical order.
pub fn bases<M: Matroid + ?Sized>(m: &M, limits: &Limits) -> Result<Vec<ElementSet>> {
    limits.check_enumeration(m.n())?;
    let r = m.rank(m.ground());
    let elems: Vec<usize> = m.ground().iter().collect();
    let mut out = Vec::new();
    grow_bases(m, &elems, 0, ElementSet::EMPTY, r, &mut out);
    out.sort();
    Ok(out)
}

fn grow_bases<M: Matroid + ?Sized>(
    m: &M,
    elems: &[usize],
    from: usize,
    current: ElementSet,
    r: usize,
    out: &mut Vec<ElementSet>,
) {
    if current.len() == r {
        out.push(current);
        return;
    }
    if current.len() + (elems.len() - from) < r {
        return;
    }
    for i in from..elems.len() {
        let next = current.with(elems[i]);
        if m.is_independent(next) {
            grow_bases(m, elems, i + 1, next, r, out);
        }
    }
}

/// All circuits, in canonical order.
///
/// Candidates are scanned by size; a dependent set containing no smaller
/// circuit is a circuit, so supersets of known circuits are skipped.
pub fn circuits<M: Matroid + ?Sized>(m: &M, limits: &Limits) -> Result<Vec<ElementSet>> {
    limits.check_enumeration(m.n())?;
    let ground = m.ground();
    let max_size = (m.rank(ground) + 1).min(ground.len());
    let mut found: Vec<ElementSet> = Vec::new();
    for k in 1..=max_size {
        for s in ground.combinations(k) {
            if found.iter().any(|c| c.is_subset(s)) {
                continue;
            }
            if !m.is_independent(s) {
                found.push(s);
            }
        }
    }
    found.sort();
    Ok(found)
}

/// Loops and the nontrivial parallel classes among non-loops.
///
/// Two non-loops are parallel when they form a two-element circuit; classes
/// of size one are omitted.
pub fn loops_and_parallel_classes<M: Matroid + ?Sized>(m: &M) -> (ElementSet, Vec<ElementSet>) {
    let loops = m.closure(ElementSet::EMPTY);
    let mut seen = loops;
    let mut classes = Vec::new();
    for x in (m.ground() - loops).iter() {
        if seen.contains(x) {
            continue;
        }
        let class = (m.ground() - loops)
            .iter()
            .filter(|&y| y == x || m.rank(ElementSet::singleton(x).with(y)) == 1)
            .collect::<ElementSet>();
        seen = seen | class;
        if class.len() > 1 {
            classes.push(class);
        }
    }
    (loops, classes)
}

/// No loops and no parallel pairs.
pub fn is_simple<M: Matroid + ?Sized>(m: &M) -> bool {
    let (loops, classes) = loops_and_parallel_classes(m);
    loops.is_empty() && classes.is_empty()
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Uniform matroid U(k, n).
    struct Uniform(usize, usize);

    impl Matroid for Uniform {
        fn n(&self) -> usize {
            self.1
        }
        fn rank(&self, x: ElementSet) -> usize {
            x.len().min(self.0)
        }
    }

    #[test]
    fn uniform_matroid_enumerations() {
        let u = Uniform(2, 4);
        let limits = Limits::default();
        assert_eq!(bases(&u, &limits).unwrap().len(), 6);
        let cs = circuits(&u, &limits).unwrap();
        assert_eq!(cs.len(), 4);
        assert!(cs.iter().all(|c| c.len() == 3));
        assert!(is_simple(&u));
        assert_eq!(
            u.closure(ElementSet::singleton(0)),
            ElementSet::singleton(0)
        );
        assert_eq!(
            u.closure(ElementSet::from_iter([0, 1])),
            ElementSet::full(4)
        );
    }

    #[test]
    fn rank_one_matroid_is_one_parallel_class() {
        let u = Uniform(1, 3);
        let (loops, classes) = loops_and_parallel_classes(&u);
        assert!(loops.is_empty());
        assert_eq!(classes, vec![ElementSet::full(3)]);
        assert!(!is_simple(&u));
    }

    #[test]
    fn guard_is_enforced() {
        let u = Uniform(1, 5);
        let tight = Limits {
            max_enumeration_n: 4,
            ..Limits::default()
        };
        assert!(matches!(
            bases(&u, &tight),
            Err(Error::GuardExceeded {
                limit: 4,
                reached: 5,
                ..
            })
        ));
    }
}
