//! Graphs, distances, biconnectivity, certificates, graph6 and enumeration.

pub mod blocks;
pub mod canon;
pub mod distance;
pub mod enumerate;
pub mod graph;
pub mod graph6;

pub use blocks::{block_cut_tree, BlockCutTree};
pub use canon::{certificate, is_isomorphic, Certificate};
pub use distance::{all_pairs_distances, eccentricity_profile, DistanceMatrix, EccentricityProfile};
pub use enumerate::{connected_graphs, connected_graphs_upto, enumerate_connected};
pub use graph::{named, Graph};
pub use graph6::{parse_graph6, write_graph6};
