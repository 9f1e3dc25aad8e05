//! Exact tools for list coloring with grouped color sets.
//!
//! A lambda-assignment splits the color universe into groups and gives every
//! vertex exactly `k_i` colors from group `i`. This crate enumerates such
//! assignments up to symmetry, decides choosability exhaustively on small
//! graphs, and decides strict k-colorability of complete multipartite graphs
//! with checkable certificates.

pub mod bounds;
pub mod enumerate;
pub mod error;
pub mod graph;
pub mod lambda;
pub mod list_color;
pub mod partition;
pub mod strict;

pub type Color = u32;

pub use bounds::Bounds;
pub use error::{Error, Result};
pub use graph::{
    chromatic_number, complete_multipartite, contains_parts, embedding_oracle, is_proper, Graph,
    PartSizes,
};
pub use lambda::{
    coarsen_grouping, enumerate_lambda_assignments, lambda_choosable, lambda_partitionable,
    validate_lambda, BadAssignmentWitness, ColorGrouping, LambdaAssignment, LambdaVerdict,
    PartitionabilityWitness,
};
pub use list_color::{
    choice_number, enumerate_k_assignments, k_choosable, l_color, l_color_multipartite,
    two_choosable_fast, ChoiceNumber, Choosability, ColorSearch, ColoringWitness, ListAssignment,
    SearchOptions,
};
pub use partition::{
    enumerate_partitions, is_refinement, leq, parse_partition, refinement_hasse, IntegerPartition,
};
pub use strict::{
    case1_partition, case2_color, decide_strict_cmp, decide_strict_search, extend_witness,
    hoffman_johnson_enumerate, witness_k246, witness_k255, witness_k3k, StrictDecision,
};
