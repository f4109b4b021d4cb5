//! Boundary vertices and boundary distance matrices of graphs.
//!
//! The crate computes the boundary of a connected graph (vertices that are
//! maximally distant from some other vertex), its boundary distance matrix,
//! reconstructs graphs from boundary or strong-resolving distance data,
//! recognises the classical graph families involved, and searches graph
//! corpora for pairs of non-isomorphic graphs that share a boundary distance
//! matrix.

pub mod boundary;
pub mod error;
pub mod families;
pub mod graph_core;
pub mod hunter;
pub mod reconstruct;

pub use boundary::{bdm, boundary_of, boundary_set, is_strong_resolving, to_dot, BoundaryDistanceMatrix, BoundarySet};
pub use error::{Error, Result};
pub use families::{recognize, Family, FamilyFlags};
pub use graph_core::{
    all_pairs_distances, block_cut_tree, certificate, connected_graphs, enumerate_connected, is_isomorphic,
    parse_graph6, write_graph6, Certificate, DistanceMatrix, Graph,
};
pub use hunter::{canonical_bdm_key, hunt_enumerated, hunt_graphs, hunt_lines, kappa_only_hunt, CollisionKey, HuntOptions, HuntReport};
pub use reconstruct::{
    bdm_verdict, consistent_graphs, graph_from_sv, is_irrelevant_edge, reconstruct_ptolemaic, tree_from_leaf_distances,
    verify_claim, BdmVerdict, SvMatrix,
};

/// Runs `f` on a dedicated pool with `jobs` worker threads.
pub fn with_jobs<T: Send>(jobs: usize, f: impl FnOnce() -> T + Send) -> T {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .expect("thread pool")
        .install(f)
}
