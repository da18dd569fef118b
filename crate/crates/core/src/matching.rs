//! Maximum bipartite matching between elements and the blocks containing them.
//!
//! Plain augmenting paths (Kuhn's algorithm). Elements are inserted in
//! ascending index order and each search tries blocks in ascending index
//! order, so the matching returned is deterministic.

use crate::ElementSet;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matching {
    /// `block_of[x]` is the block representing element `x`, if matched.
    pub block_of: Vec<Option<usize>>,
    /// `element_of[k]` is the element matched to block `k`, if any.
    pub element_of: Vec<Option<usize>>,
    pub size: usize,
}

impl Matching {
    pub fn matched_elements(&self) -> ElementSet {
        self.block_of
            .iter()
            .enumerate()
            .filter(|(_, b)| b.is_some())
            .map(|(x, _)| x)
            .collect()
    }
}

/// Finds a maximum matching using only the elements in `left`.
///
/// `adjacency[x]` lists the blocks containing element `x` in ascending order.
pub fn maximum_matching(adjacency: &[Vec<usize>], blocks: usize, left: ElementSet) -> Matching {
    let mut block_of = vec![None; adjacency.len()];
    let mut element_of = vec![None; blocks];
    let mut visited = vec![false; blocks];
    let mut size = 0;
    for x in left.iter() {
        visited.iter_mut().for_each(|v| *v = false);
        if augment(adjacency, x, &mut visited, &mut block_of, &mut element_of) {
            size += 1;
        }
    }
    Matching {
        block_of,
        element_of,
        size,
    }
}

fn augment(
    adjacency: &[Vec<usize>],
    x: usize,
    visited: &mut [bool],
    block_of: &mut [Option<usize>],
    element_of: &mut [Option<usize>],
) -> bool {
    for &k in &adjacency[x] {
        if visited[k] {
            continue;
        }
        visited[k] = true;
        let free = match element_of[k] {
            None => true,
            Some(y) => augment(adjacency, y, visited, block_of, element_of),
        };
        if free {
            element_of[k] = Some(x);
            block_of[x] = Some(k);
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn needs_augmentation_to_reach_maximum() {
        // x0 -> {0, 1}, x1 -> {0}: greedy puts x0 on block 0, augmentation moves it.
        let adj = vec![vec![0, 1], vec![0]];
        let m = maximum_matching(&adj, 2, ElementSet::full(2));
        assert_eq!(m.size, 2);
        assert_eq!(m.block_of, vec![Some(1), Some(0)]);
        assert_eq!(m.element_of, vec![Some(1), Some(0)]);
    }

    #[test]
    fn restricted_left_side() {
        let adj = vec![vec![0], vec![0], vec![1]];
        let only = ElementSet::from_iter([0, 1]);
        assert_eq!(maximum_matching(&adj, 2, only).size, 1);
        assert_eq!(maximum_matching(&adj, 2, ElementSet::full(3)).size, 2);
        assert_eq!(maximum_matching(&adj, 2, ElementSet::EMPTY).size, 0);
    }

    #[test]
    fn isolated_element_stays_unmatched() {
        let adj = vec![vec![], vec![0]];
        let m = maximum_matching(&adj, 1, ElementSet::full(2));
        assert_eq!(m.size, 1);
        assert_eq!(m.matched_elements(), ElementSet::singleton(1));
    }
}
