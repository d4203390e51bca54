//! Monitoring edge-geodetic sets: solvers, verifiers, and generators.
//!
//! An edge of a graph is monitored by a pair of vertices when every
//! shortest path between them traverses it; a monitoring set is a set of
//! vertices such that each edge is monitored by some pair. This crate works
//! with a generalized form: positive integer edge weights, binary vertex
//! costs, and an arbitrary subset of edges to monitor.
//!
//! The pieces:
//!
//! * [`graph`] — instances, distances-by-deletion, girth, feasibility.
//! * [`oracle`] — all-pairs distances with modular shortest-path counts.
//! * [`monitor`] — the monitoring criterion (constant-time and reference
//!   flavors), solution verification, minimalization, forced vertices.
//! * [`exact`] — brute-force optimum with forced-vertex pinning and
//!   leaf-neighbor pruning.
//! * [`greedy`] — the pair-based set-cover approximation.
//! * [`separator`] — balanced vertex separators (exact, BFS-layer,
//!   tree-centroid).
//! * [`projector`] — cluster projections with bypass edges.
//! * [`hier`] — the separator-based hierarchical approximation and its
//!   ratio-bound calculators.
//! * [`reductions`] — set-cover and dominating-set hardness gadgets with
//!   solution extraction.
//! * [`io`], [`gen`], [`bench`] — file formats, instance generators, and
//!   the benchmark runner.

pub mod bench;
pub mod error;
pub mod exact;
pub mod gen;
pub mod graph;
pub mod greedy;
pub mod hier;
pub mod io;
pub mod monitor;
pub mod oracle;
pub mod projector;
pub mod reductions;
pub mod separator;
mod util;

pub use error::{Error, Result};
pub use graph::{
    validate_instance, EdgeId, FeasibilityReport, GmegInstance, VertexId, WeightedGraph,
    INFINITE_DIST,
};
pub use monitor::{Algorithm, OracleMode, Solution, SolutionFlag};
pub use oracle::DistanceOracle;
