//! Matroids and geometric lattices induced by finite coverings.
//!
//! A [`Covering`] yields a [`TransversalMatroid`] and, when the matching
//! approximation operator is a closure operator, a [`PartitionMatroid`] for
//! each of `SH`, `XH` and `VH`. [`enumerate_lattice`] builds the flat
//! lattice of any [`Matroid`], and [`matroid_from_lattice`] reads one back.
//! The [`oracle`] module holds naive reference implementations for tests.
//!
//! ```
//! use covmat::{enumerate_lattice, Covering, Limits, TransversalMatroid};
//!
//! let c = Covering::parse("universe: 1 2 3\nblock: 1 2\nblock: 2 3\n")?;
//! let l = enumerate_lattice(&TransversalMatroid::of_covering(&c), &Limits::default())?;
//! assert!(l.is_geometric().holds());
//! # Ok::<(), covmat::Error>(())
//! ```

pub mod approx;
pub mod bridge;
pub mod error;
pub mod lattice;
pub mod matching;
pub mod matroid;
pub mod oracle;
pub mod partition_matroid;
pub mod random;
pub mod reduction;
pub mod relations;
pub mod set;
pub mod transversal;
pub mod universe;
pub mod verify;

pub use approx::{
    equ_condition, forms_partition, induced_partition_matroid, is_closure_operator,
    neighborhood_table, tra_condition, ClosureVerdict, NeighborhoodTable, OperatorKind, Witness,
};
pub use bridge::{
    independence_from_lattice, independent_iff_flat_bound, induced_rank, matroid_from_lattice,
    LatticeMatroid, SubmodularSystem,
};
pub use error::{Error, Result};
pub use lattice::{enumerate_lattice, FlatLattice, GeometricReport, Violation};
pub use matroid::{Limits, Matroid};
pub use partition_matroid::{partition_lower, partition_upper, PartitionMatroid};
pub use random::InstanceGenerator;
pub use reduction::{exclusion, immured_blocks, reducible_blocks, reduct, ReductionReport};
pub use relations::{ClaimVerdict, Outcome, RelationReport};
pub use set::ElementSet;
pub use transversal::{ABDecomposition, TransversalMatroid};
pub use universe::{Covering, Partition, SetFamily, Universe};
pub use verify::{verify_covering, CheckResult, VerifyReport};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/coverings.md")]
    mod coverings {}
    #[doc = include_str!("../../../book/src/transversal.md")]
    mod transversal {}
    #[doc = include_str!("../../../book/src/lattices.md")]
    mod lattices {}
    #[doc = include_str!("../../../book/src/operators.md")]
    mod operators {}
    #[doc = include_str!("../../../book/src/reduction.md")]
    mod reduction {}
    #[doc = include_str!("../../../book/src/bridge.md")]
    mod bridge {}
    #[doc = include_str!("../../../book/src/relations.md")]
    mod relations {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
