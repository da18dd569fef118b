#![allow(dead_code)]

use std::sync::Arc;

use covmat::{Covering, ElementSet, Partition, SetFamily, Universe};
use proptest::prelude::*;

pub const TWO_COMPONENTS: &str = include_str!("../../../../data/two_components.cov");
pub const NINE_ELEMENTS: &str = include_str!("../../../../data/nine_elements.cov");
pub const TRANSVERSAL_FAMILY: &str = include_str!("../../../../data/transversal_family.cov");
pub const THREE_POINT_FAMILY: &str = include_str!("../../../../data/three_point_family.cov");
pub const UNION_BLOCK: &str = include_str!("../../../../data/union_block.cov");
pub const NESTED_SINGLETONS: &str = include_str!("../../../../data/nested_singletons.cov");
pub const NESTED_CHAIN: &str = include_str!("../../../../data/nested_chain.cov");
pub const PARTITION: &str = include_str!("../../../../data/partition.cov");

pub fn covering(text: &str) -> Covering {
    Covering::parse(text).unwrap()
}

pub fn family(text: &str) -> SetFamily {
    SetFamily::parse(text).unwrap()
}

pub fn s(f: &SetFamily, labels: &[&str]) -> ElementSet {
    f.universe().set_of(labels).unwrap()
}

pub fn sets(f: &SetFamily, list: &[&[&str]]) -> Vec<ElementSet> {
    let mut v: Vec<ElementSet> = list.iter().map(|l| s(f, l)).collect();
    v.sort();
    v
}

fn universe(n: usize) -> Arc<Universe> {
    Arc::new(Universe::numbered(n).unwrap())
}

/// Families over `1..=max_n` elements with `1..=max_m` nonempty blocks.
pub fn arb_family(max_n: usize, max_m: usize) -> impl Strategy<Value = SetFamily> {
    (1..=max_n).prop_flat_map(move |n| {
        prop::collection::vec(1u64..(1u64 << n), 1..=max_m).prop_map(move |masks| {
            SetFamily::new(
                universe(n),
                masks.into_iter().map(ElementSet::from_bits).collect(),
            )
            .unwrap()
        })
    })
}

/// Coverings: a random family with each uncovered element added to a chosen block.
pub fn arb_covering(max_n: usize, max_m: usize) -> impl Strategy<Value = Covering> {
    (arb_family(max_n, max_m), any::<u64>()).prop_map(|(f, salt)| {
        let mut blocks = f.blocks().to_vec();
        for (i, x) in (f.ground() - f.union()).iter().enumerate() {
            let k = (salt as usize).wrapping_add(i * 31) % blocks.len();
            blocks[k] = blocks[k].with(x);
        }
        Covering::new(SetFamily::new(f.universe().clone(), blocks).unwrap()).unwrap()
    })
}

/// Partitions given by a class label per element.
pub fn arb_partition(max_n: usize) -> impl Strategy<Value = Partition> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec(0..n, n).prop_map(move |labels| {
            let mut classes = vec![ElementSet::EMPTY; n];
            for (x, &k) in labels.iter().enumerate() {
                classes[k] = classes[k].with(x);
            }
            classes.retain(|c| !c.is_empty());
            let f = SetFamily::new(universe(n), classes).unwrap();
            Partition::new(Covering::new(f).unwrap()).unwrap()
        })
    })
}
