//! Uniform entry point over all solvers, plus the search statistics they
//! report.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::exact::{exact_skyline_with, ExactOptions, PruningToggles};
use crate::heuristics::{run_policy, ExpansionPolicy};
use crate::network::RoadNetwork;
use crate::oracle::{brute_skyline, OracleError, OracleLimits};
use crate::query::Query;
use crate::skyline::SkylineSet;
use crate::taskgraph::TaskGraph;

/// Counters and optional recordings common to every search.
#[derive(Clone, Debug, Default)]
pub struct SearchStats {
    /// Children created during expansion (whether or not they survived the
    /// budget check).
    pub generated: u64,
    /// Children created whose last node is a task — the task-permutation
    /// counter the worst-case generation bounds are stated over.
    pub task_paths: u64,
    pub dequeued: u64,
    /// Detour of each dequeued path, in order (only when recording).
    pub dequeue_detours: Vec<f64>,
    /// Readable event log (only when recording).
    pub trace: Vec<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SolverKind {
    Exact,
    Doh,
    Kgh,
    Mdh,
    Mrh,
    Oracle,
}

impl SolverKind {
    pub const ALL: [SolverKind; 6] = [
        SolverKind::Exact,
        SolverKind::Doh,
        SolverKind::Kgh,
        SolverKind::Mdh,
        SolverKind::Mrh,
        SolverKind::Oracle,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            SolverKind::Exact => "exact",
            SolverKind::Doh => "doh",
            SolverKind::Kgh => "kgh",
            SolverKind::Mdh => "mdh",
            SolverKind::Mrh => "mrh",
            SolverKind::Oracle => "oracle",
        }
    }
}

impl fmt::Display for SolverKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Error)]
#[error("unknown solver `{0}` (expected exact, doh, kgh, mdh, mrh or oracle)")]
pub struct UnknownSolver(String);

impl FromStr for SolverKind {
    type Err = UnknownSolver;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        SolverKind::ALL
            .iter()
            .find(|k| k.name() == s)
            .copied()
            .ok_or_else(|| UnknownSolver(s.to_string()))
    }
}

#[derive(Clone, Copy, Debug)]
pub struct SolveOptions {
    /// Neighbor cap for kGH.
    pub k: usize,
    pub pruning: PruningToggles,
    pub oracle_limits: OracleLimits,
    /// Record per-dequeue detours and an event trace.
    pub record: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            k: 5,
            pruning: PruningToggles::default(),
            oracle_limits: OracleLimits::default(),
            record: false,
        }
    }
}

#[derive(Debug, Error)]
pub enum SolveError {
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

/// Runs one solver end to end. The graph heuristics build their task graph
/// here, inside the call, so their cost is part of the solver's runtime.
pub fn solve(
    net: &RoadNetwork,
    query: &Query,
    kind: SolverKind,
    opts: SolveOptions,
) -> Result<(SkylineSet, SearchStats), SolveError> {
    match kind {
        SolverKind::Exact => {
            let (skyline, stats) = exact_skyline_with(
                net,
                query,
                ExactOptions {
                    pruning: opts.pruning,
                    record: opts.record,
                },
            );
            Ok((skyline, stats))
        }
        SolverKind::Oracle => {
            let skyline = brute_skyline(net, query, opts.oracle_limits)?;
            Ok((skyline, SearchStats::default()))
        }
        SolverKind::Doh | SolverKind::Kgh | SolverKind::Mdh | SolverKind::Mrh => {
            let tg = TaskGraph::build(net, query);
            let (tg, policy) = match kind {
                SolverKind::Doh => (tg, ExpansionPolicy::All),
                SolverKind::Kgh => (tg.knn_reduce(opts.k), ExpansionPolicy::All),
                SolverKind::Mdh => (tg, ExpansionPolicy::MinDetour),
                SolverKind::Mrh => (tg, ExpansionPolicy::MaxReward),
                _ => unreachable!(),
            };
            let out = run_policy(&tg, query, policy, opts.record);
            Ok((out.skyline, out.stats))
        }
    }
}
