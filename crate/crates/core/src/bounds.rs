//! Size limits for the exhaustive procedures.
//!
//! Every search in this crate is exact, so its cost grows quickly. Each
//! operation checks its input against one of these limits up front and
//! fails with [`Error::BoundExceeded`](crate::Error::BoundExceeded) instead
//! of running for hours.

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Bounds {
    /// Largest `k` accepted by `enumerate_partitions`.
    pub partition_weight: usize,
    /// Largest `k` accepted by `refinement_hasse`.
    pub hasse_weight: usize,
    /// Largest vertex count of a complete multipartite graph.
    pub multipartite_vertices: usize,
    /// Largest vertex count for the generic chromatic number search.
    pub chromatic_vertices: usize,
    /// Largest `n * k` for exhaustive k-assignment enumeration.
    pub k_assignment_cells: usize,
    /// Largest `n * weight(lambda)` for exhaustive lambda-assignment enumeration.
    pub lambda_assignment_cells: usize,
    /// Largest host vertex count for the brute-force embedding oracle.
    pub embedding_host_vertices: usize,
    /// Largest pattern vertex count for the brute-force embedding oracle.
    pub embedding_pattern_vertices: usize,
    /// Largest vertex count for the generic (not part-aligned) partition search.
    pub generic_partition_vertices: usize,
    /// Cap on the number of symmetries kept for orbit pruning.
    pub max_symmetries: usize,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds {
            partition_weight: 30,
            hasse_weight: 12,
            multipartite_vertices: 64,
            chromatic_vertices: 16,
            k_assignment_cells: 24,
            lambda_assignment_cells: 30,
            embedding_host_vertices: 16,
            embedding_pattern_vertices: 12,
            generic_partition_vertices: 12,
            max_symmetries: 50_000,
        }
    }
}
