//! Reducible and immured blocks, and the coverings left after removing them.
//!
//! A block is reducible when it is a union of other blocks, and immured when
//! it is strictly contained in another block. Reported indices always refer
//! to the block order of the covering passed in.

use crate::error::Result;
use crate::universe::Covering;
use crate::ElementSet;

/// Whether block `k` of `blocks` is a union of blocks among `live`, other than itself.
fn is_reducible_among(blocks: &[ElementSet], live: &[usize], k: usize) -> bool {
    let target = blocks[k];
    let inner = live
        .iter()
        .filter(|&&j| j != k && blocks[j].is_subset(target))
        .fold(ElementSet::EMPTY, |acc, &j| acc | blocks[j]);
    inner == target
}

pub fn reducible_blocks(c: &Covering) -> Vec<usize> {
    let live: Vec<usize> = (0..c.len()).collect();
    live.iter()
        .copied()
        .filter(|&k| is_reducible_among(c.blocks(), &live, k))
        .collect()
}

/// Indices of the blocks kept by [`reduct`].
///
/// Removes the lowest-indexed reducible block, rescans, and repeats until no
/// block is reducible.
pub fn reduct_indices(c: &Covering) -> Vec<usize> {
    let mut live: Vec<usize> = (0..c.len()).collect();
    while let Some(pos) = live
        .iter()
        .position(|&k| is_reducible_among(c.blocks(), &live, k))
    {
        live.remove(pos);
    }
    live
}

/// The covering with reducible blocks removed one at a time until none remain.
pub fn reduct(c: &Covering) -> Result<Covering> {
    c.select(&reduct_indices(c))
}

pub fn immured_blocks(c: &Covering) -> Vec<usize> {
    let blocks = c.blocks();
    (0..blocks.len())
        .filter(|&k| {
            blocks
                .iter()
                .any(|&other| blocks[k].is_strict_subset(other))
        })
        .collect()
}

/// The covering with every immured block of `c` removed at once.
///
/// Strict containment is judged against `c` itself; the maximal blocks that
/// survive still cover the universe.
pub fn exclusion(c: &Covering) -> Result<Covering> {
    let immured = immured_blocks(c);
    let keep: Vec<usize> = (0..c.len()).filter(|k| !immured.contains(k)).collect();
    c.select(&keep)
}

#[derive(Debug, Clone)]
pub struct ReductionReport {
    pub reducible_blocks: Vec<usize>,
    pub immured_blocks: Vec<usize>,
    pub reduct: Covering,
    pub exclusion: Covering,
}

impl ReductionReport {
    pub fn new(c: &Covering) -> Result<Self> {
        Ok(ReductionReport {
            reducible_blocks: reducible_blocks(c),
            immured_blocks: immured_blocks(c),
            reduct: reduct(c)?,
            exclusion: exclusion(c)?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cov(u: &[&str], blocks: &[&[&str]]) -> Covering {
        Covering::from_labels(u, blocks).unwrap()
    }

    fn block_sets(c: &Covering) -> Vec<Vec<&str>> {
        c.blocks()
            .iter()
            .map(|&b| c.universe().labels_of(b))
            .collect()
    }

    #[test]
    fn union_block_is_reducible() {
        let c = cov(
            &["1", "2", "3"],
            &[&["1", "2"], &["1", "3"], &["1", "2", "3"]],
        );
        assert_eq!(reducible_blocks(&c), vec![2]);
        assert_eq!(
            block_sets(&reduct(&c).unwrap()),
            vec![vec!["1", "2"], vec!["1", "3"]]
        );

        let d = cov(&["1", "2"], &[&["1"], &["2"], &["1", "2"]]);
        assert_eq!(reducible_blocks(&d), vec![2]);
    }

    #[test]
    fn reduct_rescans_after_each_removal() {
        let c = cov(
            &["1", "2", "3"],
            &[&["1"], &["2"], &["1", "2"], &["1", "2", "3"], &["3"]],
        );
        assert_eq!(reducible_blocks(&c), vec![2, 3]);
        assert_eq!(reduct_indices(&c), vec![0, 1, 4]);
        let r = reduct(&c).unwrap();
        assert!(r.is_partition());
        assert!(reducible_blocks(&r).is_empty());
    }

    #[test]
    fn irreducible_and_partition_cases() {
        let p = cov(&["a", "b", "c"], &[&["a", "b"], &["c"]]);
        assert!(reducible_blocks(&p).is_empty());
        assert!(immured_blocks(&p).is_empty());
        assert!(reduct(&p).unwrap().same_blocks(&p));
        assert!(exclusion(&p).unwrap().same_blocks(&p));
    }

    #[test]
    fn immured_blocks_and_exclusion() {
        let c2 = cov(
            &["1", "2", "3"],
            &[&["1"], &["1", "2"], &["2", "3"], &["1", "2", "3"]],
        );
        assert_eq!(immured_blocks(&c2), vec![0, 1, 2]);
        assert_eq!(
            block_sets(&exclusion(&c2).unwrap()),
            vec![vec!["1", "2", "3"]]
        );

        let ab = cov(&["a", "b"], &[&["a", "b"], &["a"]]);
        assert_eq!(immured_blocks(&ab), vec![1]);

        let abc = cov(&["a", "b", "c"], &[&["a", "b"], &["a"], &["c"]]);
        assert_eq!(
            block_sets(&exclusion(&abc).unwrap()),
            vec![vec!["a", "b"], vec!["c"]]
        );
    }

    #[test]
    fn report_collects_everything() {
        let c = cov(
            &["1", "2", "3"],
            &[&["1", "2"], &["1", "3"], &["1", "2", "3"]],
        );
        let r = ReductionReport::new(&c).unwrap();
        assert_eq!(r.reducible_blocks, vec![2]);
        assert_eq!(r.immured_blocks, vec![0, 1]);
        assert_eq!(r.reduct.len(), 2);
        assert_eq!(r.exclusion.len(), 1);
    }
}
