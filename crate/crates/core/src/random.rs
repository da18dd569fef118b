//! Seeded random families, coverings and partitions for property suites.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::universe::{Covering, Partition, SetFamily, Universe};
use crate::ElementSet;

/// Deterministic instance source; equal seeds give equal sequences.
#[derive(Debug, Clone)]
pub struct InstanceGenerator {
    rng: ChaCha8Rng,
}

impl InstanceGenerator {
    pub fn new(seed: u64) -> Self {
        InstanceGenerator {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// Uniform in `lo..=hi`.
    pub fn size(&mut self, lo: usize, hi: usize) -> usize {
        self.rng.random_range(lo..=hi)
    }

    fn nonempty_subset(&mut self, n: usize) -> ElementSet {
        loop {
            let s = ElementSet::from_bits(self.rng.random::<u64>()) & ElementSet::full(n);
            if !s.is_empty() {
                return s;
            }
        }
    }

    /// `m ∈ [1, max_m]` nonempty blocks over `n` numbered elements; the
    /// union need not be the whole universe.
    pub fn family(&mut self, n: usize, max_m: usize) -> SetFamily {
        let m = self.size(1, max_m);
        let blocks = (0..m).map(|_| self.nonempty_subset(n)).collect();
        SetFamily::new(universe(n), blocks).expect("generated blocks are valid")
    }

    /// A random family with every uncovered element added to a random block.
    pub fn covering(&mut self, n: usize, max_m: usize) -> Covering {
        let f = self.family(n, max_m);
        let mut blocks = f.blocks().to_vec();
        for x in (f.ground() - f.union()).iter() {
            let k = self.rng.random_range(0..blocks.len());
            blocks[k] = blocks[k].with(x);
        }
        let patched =
            SetFamily::new(f.universe().clone(), blocks).expect("generated blocks are valid");
        Covering::new(patched).expect("patched family covers")
    }

    /// Each element is sent to one of `n` class labels uniformly; empty
    /// labels disappear.
    pub fn partition(&mut self, n: usize) -> Partition {
        let mut classes = vec![ElementSet::EMPTY; n];
        for x in 0..n {
            let k = self.rng.random_range(0..n);
            classes[k] = classes[k].with(x);
        }
        classes.retain(|c| !c.is_empty());
        let f = SetFamily::new(universe(n), classes).expect("classes are valid blocks");
        Partition::new(Covering::new(f).expect("classes cover")).expect("classes are disjoint")
    }
}

fn universe(n: usize) -> Arc<Universe> {
    Arc::new(Universe::numbered(n).expect("1 ≤ n ≤ 64"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn same_seed_same_instances() {
        let mut a = InstanceGenerator::new(7);
        let mut b = InstanceGenerator::new(7);
        for _ in 0..20 {
            assert_eq!(a.covering(6, 6), b.covering(6, 6));
        }
    }

    #[test]
    fn generated_instances_are_valid() {
        let mut g = InstanceGenerator::new(1);
        for _ in 0..200 {
            let n = g.size(1, 7);
            let f = g.family(n, 7);
            assert!((1..=7).contains(&f.len()));
            let c = g.covering(n, 7);
            assert_eq!(c.union(), c.ground());
            let p = g.partition(n);
            assert!(p.is_partition());
            assert_eq!(p.union(), p.ground());
        }
    }
}
