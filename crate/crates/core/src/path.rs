//! Cost accounting for network paths: travel, detour and reward, both as a
//! from-scratch recomputation and as the incrementally maintained state the
//! exact search extends edge by edge.

use std::collections::HashSet;

use thiserror::Error;

use crate::network::{RoadNetwork, VertexId};
use crate::query::Query;

#[derive(Debug, Error)]
pub enum CostError {
    #[error("path is empty")]
    Empty,
    #[error("consecutive vertices {u} and {v} are not adjacent")]
    NotAdjacent { u: VertexId, v: VertexId },
}

/// Travel, detour and reward of one path.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PathCosts {
    pub travel: f64,
    pub detour: f64,
    pub reward: f64,
}

/// From-scratch evaluation of a vertex sequence, used to cross-check the
/// incremental bookkeeping. Travel sums all edge costs, detour sums the
/// off-preferred-path ones per traversal, and each distinct task pays once.
pub fn recompute_costs(
    net: &RoadNetwork,
    query: &Query,
    path: &[VertexId],
) -> Result<PathCosts, CostError> {
    if path.is_empty() {
        return Err(CostError::Empty);
    }
    let mut travel = 0.0;
    let mut detour = 0.0;
    for pair in path.windows(2) {
        let (u, v) = (pair[0], pair[1]);
        let cost = net.edge_cost(u, v).ok_or(CostError::NotAdjacent { u, v })?;
        travel += cost;
        detour += query.pref().edge_detour(u, v, cost);
    }
    let mut seen = HashSet::new();
    let reward = path
        .iter()
        .filter(|&&v| query.is_task(v) && seen.insert(v))
        .map(|&v| query.reward(v))
        .sum();
    Ok(PathCosts {
        travel,
        detour,
        reward,
    })
}

/// A partial path under search: the vertex sequence plus incrementally
/// maintained costs and the bookkeeping the pruning rules need.
#[derive(Clone, Debug)]
pub struct PathState {
    vertices: Vec<VertexId>,
    travel: f64,
    detour: f64,
    reward: f64,
    last_task_pos: Option<usize>,
    // Every arrival at a task, in visit order, revisits included. Keys the
    // ordered-task-sequence registry; rewards still pay once per distinct task.
    task_visits: Vec<VertexId>,
    // Vertices at or after the last task position (position 0 when no task),
    // i.e. exactly the extensions the revisit rules forbid.
    blocked: HashSet<VertexId>,
}

impl PathState {
    pub fn start(s: VertexId, query: &Query) -> Self {
        let is_task = query.is_task(s);
        PathState {
            vertices: vec![s],
            travel: 0.0,
            detour: 0.0,
            reward: if is_task { query.reward(s) } else { 0.0 },
            last_task_pos: is_task.then_some(0),
            task_visits: if is_task { vec![s] } else { Vec::new() },
            blocked: HashSet::from([s]),
        }
    }

    /// Extends by one edge. The caller supplies the edge cost; adjacency is
    /// its responsibility.
    pub fn extend(&self, u: VertexId, edge_cost: f64, query: &Query) -> Self {
        let v = self.last();
        let mut next = self.clone();
        next.vertices.push(u);
        next.travel += edge_cost;
        next.detour += query.pref().edge_detour(v, u, edge_cost);
        if query.is_task(u) {
            if !next.task_visits.contains(&u) {
                next.reward += query.reward(u);
            }
            next.task_visits.push(u);
            next.last_task_pos = Some(next.vertices.len() - 1);
            next.blocked.clear();
        }
        next.blocked.insert(u);
        next
    }

    /// Revisit rule shared by prunings P1 and P2: extension with `u` is
    /// allowed iff `u` does not occur at or after the last task position
    /// (the start position when the path has no task yet).
    pub fn may_extend(&self, u: VertexId) -> bool {
        !self.blocked.contains(&u)
    }

    pub fn last(&self) -> VertexId {
        *self.vertices.last().unwrap()
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn travel(&self) -> f64 {
        self.travel
    }

    pub fn detour(&self) -> f64 {
        self.detour
    }

    pub fn reward(&self) -> f64 {
        self.reward
    }

    pub fn last_task_pos(&self) -> Option<usize> {
        self.last_task_pos
    }

    pub fn has_task(&self) -> bool {
        !self.task_visits.is_empty()
    }

    pub fn task_visits(&self) -> &[VertexId] {
        &self.task_visits
    }

    pub fn into_vertices(self) -> Vec<VertexId> {
        self.vertices
    }
}
