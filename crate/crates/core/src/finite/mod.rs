//! Exact back-and-forth relations, freeness and Scott rank on finite structures.

mod bf;
mod rank;
mod structure;

use thiserror::Error;

pub use bf::{
    bf_leq_finite, bf_leq_finite_with, bf_partition, bf_partition_with, BfOptions, Extension,
    FiniteBf,
};
pub use rank::{
    default_level_cap, finite_rank_search, is_alpha_free_finite, is_alpha_free_finite_with,
    rank_candidates, scott_rank_finite, FiniteRank,
};
pub(crate) use structure::atomic_buckets;
pub use structure::{
    all_tuples, same_atomic_type, subsets, tuples_upto, FiniteStructure, Relation, RelationFile,
    StructureFile,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error("element {element} outside universe of size {universe}")]
    OutOfUniverse { element: usize, universe: usize },
    #[error("relation {name} has arity {arity} but a tuple of length {found}")]
    Arity {
        name: String,
        arity: usize,
        found: usize,
    },
    #[error("relation {name} of arity {arity} is too large to tabulate")]
    TooLarge { name: String, arity: usize },
    #[error("relation {0} declared twice")]
    Duplicate(String),
    #[error("invalid structure file: {0}")]
    Json(String),
}
