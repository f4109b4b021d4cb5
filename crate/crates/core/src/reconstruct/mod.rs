//! Rebuilding graphs from partial distance data, and deciding whether the
//! boundary distance matrix pins a graph down.

pub mod consistent;
pub mod irrelevant;
pub mod ptolemaic;
pub mod sv;
pub mod tree;
pub mod verify;

pub use consistent::{bdm_verdict, consistent_graphs, BdmStatus, BdmVerdict};
pub use irrelevant::is_irrelevant_edge;
pub use ptolemaic::reconstruct_ptolemaic;
pub use sv::{graph_from_sv, SvMatrix};
pub use tree::{tree_from_bdm, tree_from_leaf_distances};
pub use verify::{verify_claim, verify_predicate, Claim, Outcome, ViolationReport};
