//! Bi-criteria route search over road networks.
//!
//! Given a worker's preferred path, a travel budget and a set of rewarded
//! tasks embedded in the network, this crate computes the skyline of routes
//! trading *detour cost* (distance traveled off the preferred path) against
//! *collected reward*. It provides an exact best-first solver with safe
//! pruning, a condensed task graph, four approximate solvers over that graph
//! (DOH, kGH, MDH, MRH), and a brute-force enumeration oracle for validating
//! all of them on small instances.

pub mod exact;
pub mod fixtures;
pub mod heuristics;
pub mod network;
pub mod num;
pub mod oracle;
pub mod path;
pub mod query;
pub mod skyline;
pub mod solvers;
pub mod taskgraph;

pub use network::{MinDetourLeg, NetworkError, PreferredPath, RoadNetwork, VertexId};
pub use query::{Query, QueryError};
pub use skyline::{SkylinePoint, SkylineSet};
pub use solvers::{solve, SearchStats, SolveOptions, SolverKind};
pub use taskgraph::{TaskGraph, TgNode};
