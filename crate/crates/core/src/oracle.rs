//! Brute-force ground truth for small instances: exhaustive enumeration of
//! budget-bounded walks, with explicit safety caps.
//!
//! The solution space genuinely contains vertex revisits (a worker may double
//! back to pick up a task), so the oracle enumerates walks, not simple paths;
//! strictly positive edge costs and the finite budget keep that enumeration
//! finite.

use thiserror::Error;

use crate::network::{PreferredPath, RoadNetwork, VertexId};
use crate::num::{approx_eq, approx_le};
use crate::query::Query;
use crate::skyline::{dominates, SkylinePoint, SkylineSet};

/// Enumeration caps; exceeding one aborts with an error, never truncates.
#[derive(Clone, Copy, Debug)]
pub struct OracleLimits {
    pub max_vertices: usize,
    pub max_tasks: usize,
    pub max_paths: u64,
}

impl Default for OracleLimits {
    fn default() -> Self {
        OracleLimits {
            max_vertices: 14,
            max_tasks: 4,
            max_paths: 10_000_000,
        }
    }
}

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("instance has {got} vertices, oracle cap is {cap}")]
    TooManyVertices { got: usize, cap: usize },
    #[error("instance has {got} tasks, oracle cap is {cap}")]
    TooManyTasks { got: usize, cap: usize },
    #[error("walk enumeration exceeded the cap of {0} extensions")]
    PathCapExceeded(u64),
}

/// Reference skyline by exhaustive enumeration of all walks from `s` to `d`
/// with travel within budget, at least one task, and the non-dominated filter
/// applied to the collected candidates.
pub fn brute_skyline(
    net: &RoadNetwork,
    query: &Query,
    limits: OracleLimits,
) -> Result<SkylineSet, OracleError> {
    check_limits(net, query.tasks().len(), limits)?;

    let mut candidates: Vec<Candidate> = Vec::new();
    let mut path = vec![query.source()];
    let mut state = WalkState {
        travel: 0.0,
        detour: 0.0,
    };
    let mut reward = 0.0;
    let mut visited_tasks: Vec<VertexId> = Vec::new();
    if query.is_task(query.source()) {
        reward = query.reward(query.source());
        visited_tasks.push(query.source());
    }
    let mut count = 0u64;
    dfs_skyline(
        net,
        query,
        &mut count,
        limits.max_paths,
        &mut path,
        &mut state,
        &mut reward,
        &mut visited_tasks,
        &mut candidates,
    )?;

    Ok(filter_candidates(candidates, query.budget()))
}

struct Candidate {
    detour: f64,
    travel: f64,
    reward: f64,
    path: Vec<VertexId>,
}

#[allow(clippy::too_many_arguments)]
fn dfs_skyline(
    net: &RoadNetwork,
    query: &Query,
    count: &mut u64,
    max_paths: u64,
    path: &mut Vec<VertexId>,
    state: &mut WalkState,
    reward: &mut f64,
    visited_tasks: &mut Vec<VertexId>,
    candidates: &mut Vec<Candidate>,
) -> Result<(), OracleError> {
    let v = *path.last().unwrap();
    if v == query.dest() && !visited_tasks.is_empty() {
        candidates.push(Candidate {
            detour: state.detour,
            travel: state.travel,
            reward: *reward,
            path: path.clone(),
        });
    }
    for &(u, cost) in net.neighbors(v) {
        let travel = state.travel + cost;
        if !approx_le(travel, query.budget()) {
            continue;
        }
        *count += 1;
        if *count > max_paths {
            return Err(OracleError::PathCapExceeded(max_paths));
        }
        let detour = state.detour + query.pref().edge_detour(v, u, cost);
        let first_visit = query.is_task(u) && !visited_tasks.contains(&u);
        if first_visit {
            *reward += query.reward(u);
        }
        if query.is_task(u) {
            visited_tasks.push(u);
        }
        path.push(u);
        let saved = *state;
        *state = WalkState { travel, detour };
        dfs_skyline(
            net,
            query,
            count,
            max_paths,
            path,
            state,
            reward,
            visited_tasks,
            candidates,
        )?;
        *state = saved;
        path.pop();
        if query.is_task(u) {
            visited_tasks.pop();
        }
        if first_visit {
            *reward -= query.reward(u);
        }
    }
    Ok(())
}

fn filter_candidates(mut candidates: Vec<Candidate>, budget: f64) -> SkylineSet {
    candidates.sort_by(|a, b| {
        a.detour
            .total_cmp(&b.detour)
            .then(b.reward.total_cmp(&a.reward))
            .then(a.travel.total_cmp(&b.travel))
            .then(a.path.cmp(&b.path))
    });
    let mut skyline = SkylineSet::with_budget(budget);
    let mut best_reward = f64::NEG_INFINITY;
    for c in candidates {
        if best_reward.is_finite() && !crate::num::approx_gt(c.reward, best_reward) {
            continue;
        }
        best_reward = c.reward;
        skyline.insert(SkylinePoint {
            detour: c.detour,
            travel: c.travel,
            reward: c.reward,
            path: c.path,
        });
    }
    skyline
}

/// Exhaustive minimum over enumerated walks `a -> b` with travel within
/// `budget_cap` of the lexicographic `(detour, travel)` pair. `None` when no
/// such walk exists.
pub fn brute_min_detour_leg(
    net: &RoadNetwork,
    pref: &PreferredPath,
    a: VertexId,
    b: VertexId,
    budget_cap: f64,
    limits: OracleLimits,
) -> Result<Option<(f64, f64)>, OracleError> {
    if net.vertex_count() > limits.max_vertices {
        return Err(OracleError::TooManyVertices {
            got: net.vertex_count(),
            cap: limits.max_vertices,
        });
    }
    let mut best: Option<(f64, f64)> = None;
    let mut count = 0u64;
    let mut path = vec![a];
    dfs_leg(
        net,
        pref,
        b,
        budget_cap,
        limits.max_paths,
        &mut count,
        &mut path,
        WalkState {
            travel: 0.0,
            detour: 0.0,
        },
        &mut best,
    )?;
    Ok(best)
}

#[allow(clippy::too_many_arguments)]
fn dfs_leg(
    net: &RoadNetwork,
    pref: &PreferredPath,
    target: VertexId,
    cap: f64,
    max_paths: u64,
    count: &mut u64,
    path: &mut Vec<VertexId>,
    state: WalkState,
    best: &mut Option<(f64, f64)>,
) -> Result<(), OracleError> {
    let v = *path.last().unwrap();
    if v == target {
        let cand = (state.detour, state.travel);
        if best.is_none_or(|b| cand < b) {
            *best = Some(cand);
        }
    }
    for &(u, cost) in net.neighbors(v) {
        let travel = state.travel + cost;
        if !approx_le(travel, cap) {
            continue;
        }
        *count += 1;
        if *count > max_paths {
            return Err(OracleError::PathCapExceeded(max_paths));
        }
        path.push(u);
        dfs_leg(
            net,
            pref,
            target,
            cap,
            max_paths,
            count,
            path,
            WalkState {
                travel,
                detour: state.detour + pref.edge_detour(v, u, cost),
            },
            best,
        )?;
        path.pop();
    }
    Ok(())
}

#[derive(Clone, Copy)]
struct WalkState {
    travel: f64,
    detour: f64,
}

fn check_limits(net: &RoadNetwork, tasks: usize, limits: OracleLimits) -> Result<(), OracleError> {
    if net.vertex_count() > limits.max_vertices {
        return Err(OracleError::TooManyVertices {
            got: net.vertex_count(),
            cap: limits.max_vertices,
        });
    }
    if tasks > limits.max_tasks {
        return Err(OracleError::TooManyTasks {
            got: tasks,
            cap: limits.max_tasks,
        });
    }
    Ok(())
}

/// Non-dominated subset of arbitrary `(detour, reward)` pairs, deduplicated
/// and sorted by detour. Independent of any insertion-order assumption; used
/// to cross-check the incremental skyline maintenance.
pub fn non_dominated_filter(pairs: &[(f64, f64)]) -> Vec<(f64, f64)> {
    let mut kept: Vec<(f64, f64)> = Vec::new();
    for &p in pairs {
        if pairs.iter().any(|&q| dominates(q, p)) {
            continue;
        }
        if kept
            .iter()
            .any(|&k| approx_eq(k.0, p.0) && approx_eq(k.1, p.1))
        {
            continue;
        }
        kept.push(p);
    }
    kept.sort_by(|a, b| a.0.total_cmp(&b.0));
    kept
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn fixture_skyline() {
        let fx = fixtures::eight_vertex();
        let q = fx.query(21.0);
        let sky = brute_skyline(&fx.net, &q, OracleLimits::default()).unwrap();
        assert_eq!(sky.pairs(), vec![(4.0, 5.0), (14.0, 9.0)]);
    }

    #[test]
    fn budget_below_cheapest_completion_is_empty() {
        let fx = fixtures::eight_vertex();
        // Cheapest valid completion is s,v1,v2,d,t3,d at travel 19.
        let q = fx.query(18.9);
        let sky = brute_skyline(&fx.net, &q, OracleLimits::default()).unwrap();
        assert!(sky.is_empty());
    }

    #[test]
    fn leg_search_examples() {
        let fx = fixtures::eight_vertex();
        let pref = fx.pref();
        let limits = OracleLimits::default();
        assert_eq!(
            brute_min_detour_leg(&fx.net, &pref, fx.s, fx.t2, 21.0, limits).unwrap(),
            Some((2.0, 7.0))
        );
        assert_eq!(
            brute_min_detour_leg(&fx.net, &pref, fx.s, fx.s, 21.0, limits).unwrap(),
            Some((0.0, 0.0))
        );
        assert_eq!(
            brute_min_detour_leg(&fx.net, &pref, fx.t3, fx.t2, 4.0, limits).unwrap(),
            None
        );
    }

    #[test]
    fn cap_exceeded_is_an_error() {
        let fx = fixtures::eight_vertex();
        let q = fx.query(21.0);
        let tiny = OracleLimits {
            max_paths: 10,
            ..OracleLimits::default()
        };
        assert!(matches!(
            brute_skyline(&fx.net, &q, tiny),
            Err(OracleError::PathCapExceeded(10))
        ));
    }

    #[test]
    fn vertex_and_task_caps() {
        let fx = fixtures::eight_vertex();
        let q = fx.query(21.0);
        let limits = OracleLimits {
            max_vertices: 4,
            ..OracleLimits::default()
        };
        assert!(matches!(
            brute_skyline(&fx.net, &q, limits),
            Err(OracleError::TooManyVertices { .. })
        ));
        let limits = OracleLimits {
            max_tasks: 2,
            ..OracleLimits::default()
        };
        assert!(matches!(
            brute_skyline(&fx.net, &q, limits),
            Err(OracleError::TooManyTasks { .. })
        ));
    }

    #[test]
    fn enumeration_order_does_not_matter() {
        // Same fixture with edge records in reversed order: adjacency lists
        // flip, the skyline must not.
        let fx = fixtures::eight_vertex();
        let mut lines: Vec<&str> = fixtures::eight_vertex_file().lines().collect();
        lines[8..].reverse();
        let reversed = RoadNetwork::parse(&(lines.join("\n") + "\n")).unwrap();

        let q = fx.query(21.0);
        let a = brute_skyline(&fx.net, &q, OracleLimits::default()).unwrap();
        let b = brute_skyline(&reversed, &q, OracleLimits::default()).unwrap();
        assert_eq!(a.pairs(), b.pairs());
    }

    #[test]
    fn non_dominated_filter_basics() {
        let pts = [(4.0, 4.0), (14.0, 9.0), (6.0, 3.0), (4.0, 5.0)];
        assert_eq!(non_dominated_filter(&pts), vec![(4.0, 5.0), (14.0, 9.0)]);
        assert!(non_dominated_filter(&[]).is_empty());
    }
}
