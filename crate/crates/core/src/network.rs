//! Road-network representation: loading, task embedding into edges, and the
//! point-to-point searches (shortest travel, minimum detour) the solvers are
//! built on.
//!
//! Networks are undirected with strictly positive edge costs. Vertices may
//! carry planar coordinates; when both endpoints of an edge have them the
//! edge cost must be at least their Euclidean distance, which keeps the
//! straight-line distance a safe lower bound for budget pruning.

use std::collections::{BTreeSet, BinaryHeap, HashSet};

use thiserror::Error;

use crate::num::{approx_ge, approx_le, approx_lt};

pub type VertexId = usize;

/// Vertex record of the plain-text network format: `id x y reward`
/// (`x`/`y` may be `-` when the position is unknown).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct VertexRecord {
    pub id: VertexId,
    pub coord: Option<(f64, f64)>,
    pub reward: f64,
}

/// Edge record of the plain-text network format: `u v cost`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct EdgeRecord {
    pub u: VertexId,
    pub v: VertexId,
    pub cost: f64,
}

#[derive(Debug, Error)]
pub enum NetworkError {
    #[error("line {line}: malformed record `{text}`")]
    Malformed { line: usize, text: String },
    #[error("duplicate vertex id {0}")]
    DuplicateVertex(VertexId),
    #[error("vertex {0} has invalid reward (must be finite and non-negative)")]
    InvalidReward(VertexId),
    #[error("vertex {0} has non-finite coordinates")]
    InvalidCoord(VertexId),
    #[error("edge ({u}, {v}) references an unknown vertex")]
    DanglingEdge { u: VertexId, v: VertexId },
    #[error("edge ({u}, {v}) has non-positive cost {cost}")]
    NonPositiveCost { u: VertexId, v: VertexId, cost: f64 },
    #[error("edge ({u}, {v}) cost {cost} is below the Euclidean endpoint distance {dist}")]
    CostBelowEuclidean {
        u: VertexId,
        v: VertexId,
        cost: f64,
        dist: f64,
    },
    #[error("duplicate edge ({u}, {v})")]
    DuplicateEdge { u: VertexId, v: VertexId },
    #[error("self-loop on vertex {0}")]
    SelfLoop(VertexId),
    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),
    #[error("no path from {from} to {to}")]
    Unreachable { from: VertexId, to: VertexId },
    #[error("no edge between {u} and {v}")]
    NoSuchEdge { u: VertexId, v: VertexId },
    #[error("offset {offset} outside (0, {cost}) for edge ({u}, {v})")]
    OffsetOutOfRange {
        u: VertexId,
        v: VertexId,
        offset: f64,
        cost: f64,
    },
    #[error("task reward must be positive and finite, got {0}")]
    NonPositiveTaskReward(f64),
    #[error("preferred path must contain at least one vertex")]
    EmptyPath,
    #[error("vertices {u} and {v} are not adjacent")]
    NotAdjacent { u: VertexId, v: VertexId },
}

/// Undirected weighted road network with task vertices carrying rewards.
///
/// Immutable after construction (task embedding builds on a mutable handle
/// before queries start); shareable across concurrent queries.
#[derive(Clone, Debug, Default)]
pub struct RoadNetwork {
    rewards: Vec<f64>,
    coords: Vec<Option<(f64, f64)>>,
    present: Vec<bool>,
    adj: Vec<Vec<(VertexId, f64)>>,
    task_ids: BTreeSet<VertexId>,
    edge_count: usize,
}

impl RoadNetwork {
    /// Builds a network from records, enforcing all structural invariants.
    pub fn from_records(
        vertices: impl IntoIterator<Item = VertexRecord>,
        edges: impl IntoIterator<Item = EdgeRecord>,
    ) -> Result<Self, NetworkError> {
        let vertices: Vec<VertexRecord> = vertices.into_iter().collect();
        let max_id = vertices.iter().map(|v| v.id).max();
        let slots = max_id.map_or(0, |m| m + 1);

        let mut net = RoadNetwork {
            rewards: vec![0.0; slots],
            coords: vec![None; slots],
            present: vec![false; slots],
            adj: vec![Vec::new(); slots],
            task_ids: BTreeSet::new(),
            edge_count: 0,
        };

        for rec in vertices {
            if net.present[rec.id] {
                return Err(NetworkError::DuplicateVertex(rec.id));
            }
            if !rec.reward.is_finite() || rec.reward < 0.0 {
                return Err(NetworkError::InvalidReward(rec.id));
            }
            if let Some((x, y)) = rec.coord {
                if !x.is_finite() || !y.is_finite() {
                    return Err(NetworkError::InvalidCoord(rec.id));
                }
            }
            net.present[rec.id] = true;
            net.rewards[rec.id] = rec.reward;
            net.coords[rec.id] = rec.coord;
            if rec.reward > 0.0 {
                net.task_ids.insert(rec.id);
            }
        }

        let mut seen = HashSet::new();
        for rec in edges {
            net.check_new_edge(rec.u, rec.v, rec.cost)?;
            if !seen.insert(edge_key(rec.u, rec.v)) {
                return Err(NetworkError::DuplicateEdge { u: rec.u, v: rec.v });
            }
            net.push_edge(rec.u, rec.v, rec.cost);
        }
        Ok(net)
    }

    /// Parses the plain-text format: one record per line, 4 fields for a
    /// vertex and 3 for an edge; `#` comments and blank lines are skipped.
    pub fn parse(text: &str) -> Result<Self, NetworkError> {
        let mut vertices = Vec::new();
        let mut edges = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let data = raw.split('#').next().unwrap_or("");
            let fields: Vec<&str> = data.split_whitespace().collect();
            let malformed = || NetworkError::Malformed {
                line,
                text: raw.trim().to_string(),
            };
            match fields.len() {
                0 => {}
                4 => {
                    let id = fields[0].parse().map_err(|_| malformed())?;
                    let coord = match (fields[1], fields[2]) {
                        ("-", "-") => None,
                        ("-", _) | (_, "-") => return Err(malformed()),
                        (x, y) => Some((
                            x.parse().map_err(|_| malformed())?,
                            y.parse().map_err(|_| malformed())?,
                        )),
                    };
                    let reward = fields[3].parse().map_err(|_| malformed())?;
                    vertices.push(VertexRecord { id, coord, reward });
                }
                3 => edges.push(EdgeRecord {
                    u: fields[0].parse().map_err(|_| malformed())?,
                    v: fields[1].parse().map_err(|_| malformed())?,
                    cost: fields[2].parse().map_err(|_| malformed())?,
                }),
                _ => return Err(malformed()),
            }
        }
        Self::from_records(vertices, edges)
    }

    /// Serializes back to the plain-text format, vertices then edges, both in
    /// ascending id order.
    pub fn to_file_string(&self) -> String {
        let mut out = String::new();
        for id in self.vertex_ids() {
            let (x, y) = match self.coords[id] {
                Some((x, y)) => (format!("{x:?}"), format!("{y:?}")),
                None => ("-".to_string(), "-".to_string()),
            };
            out.push_str(&format!("{id} {x} {y} {:?}\n", self.rewards[id]));
        }
        for id in self.vertex_ids() {
            for &(to, cost) in &self.adj[id] {
                if id < to {
                    out.push_str(&format!("{id} {to} {cost:?}\n"));
                }
            }
        }
        out
    }

    fn check_new_edge(&self, u: VertexId, v: VertexId, cost: f64) -> Result<(), NetworkError> {
        if u == v {
            return Err(NetworkError::SelfLoop(u));
        }
        if !self.contains(u) || !self.contains(v) {
            return Err(NetworkError::DanglingEdge { u, v });
        }
        if !cost.is_finite() || cost <= 0.0 {
            return Err(NetworkError::NonPositiveCost { u, v, cost });
        }
        if let (Some(a), Some(b)) = (self.coords[u], self.coords[v]) {
            let dist = euclidean(a, b);
            if !approx_ge(cost, dist) {
                return Err(NetworkError::CostBelowEuclidean { u, v, cost, dist });
            }
        }
        Ok(())
    }

    fn push_edge(&mut self, u: VertexId, v: VertexId, cost: f64) {
        self.adj[u].push((v, cost));
        self.adj[v].push((u, cost));
        self.edge_count += 1;
    }

    pub fn contains(&self, v: VertexId) -> bool {
        v < self.present.len() && self.present[v]
    }

    fn require(&self, v: VertexId) -> Result<(), NetworkError> {
        if self.contains(v) {
            Ok(())
        } else {
            Err(NetworkError::UnknownVertex(v))
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.present.iter().filter(|&&p| p).count()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    /// Ids of all present vertices in ascending order.
    pub fn vertex_ids(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.present
            .iter()
            .enumerate()
            .filter_map(|(id, &p)| p.then_some(id))
    }

    pub fn reward(&self, v: VertexId) -> f64 {
        self.rewards.get(v).copied().unwrap_or(0.0)
    }

    pub fn coord(&self, v: VertexId) -> Option<(f64, f64)> {
        self.coords.get(v).copied().flatten()
    }

    pub fn neighbors(&self, v: VertexId) -> &[(VertexId, f64)] {
        &self.adj[v]
    }

    /// Vertices with a strictly positive reward.
    pub fn task_ids(&self) -> &BTreeSet<VertexId> {
        &self.task_ids
    }

    pub fn edge_cost(&self, u: VertexId, v: VertexId) -> Option<f64> {
        self.adj
            .get(u)?
            .iter()
            .find(|&&(to, _)| to == v)
            .map(|&(_, c)| c)
    }

    /// Replaces edge `(u, v)` with `(u, t)` and `(t, v)`, inserting a new task
    /// vertex `t` at `offset` from `u`. Travel costs between pre-existing
    /// vertices are unchanged because the two halves sum to the original cost.
    pub fn embed_task(
        &mut self,
        u: VertexId,
        v: VertexId,
        offset: f64,
        reward: f64,
    ) -> Result<VertexId, NetworkError> {
        self.require(u)?;
        self.require(v)?;
        let cost = self
            .edge_cost(u, v)
            .ok_or(NetworkError::NoSuchEdge { u, v })?;
        if !offset.is_finite() || !approx_lt(0.0, offset) || !approx_lt(offset, cost) {
            return Err(NetworkError::OffsetOutOfRange { u, v, offset, cost });
        }
        if !reward.is_finite() || reward <= 0.0 {
            return Err(NetworkError::NonPositiveTaskReward(reward));
        }

        let t = self.present.len();
        // Interpolated position keeps both halves Euclidean-admissible.
        let coord = match (self.coords[u], self.coords[v]) {
            (Some(a), Some(b)) => {
                let f = offset / cost;
                Some((a.0 + f * (b.0 - a.0), a.1 + f * (b.1 - a.1)))
            }
            _ => None,
        };
        self.present.push(true);
        self.rewards.push(reward);
        self.coords.push(coord);
        self.adj.push(Vec::new());
        self.task_ids.insert(t);

        self.adj[u].retain(|&(to, _)| to != v);
        self.adj[v].retain(|&(to, _)| to != u);
        self.edge_count -= 1;
        self.push_edge(u, t, offset);
        self.push_edge(t, v, cost - offset);
        Ok(t)
    }

    /// Straight-line distance between `v` and `d`, or 0 when either vertex
    /// has no coordinates (the bound degrades to vacuous, never unsafe).
    pub fn euclidean_lower_bound(&self, v: VertexId, d: VertexId) -> f64 {
        match (self.coord(v), self.coord(d)) {
            (Some(a), Some(b)) => euclidean(a, b),
            _ => 0.0,
        }
    }

    /// Minimum-travel-cost path from `a` to `b` (Dijkstra with early exit).
    pub fn shortest_travel_path(
        &self,
        a: VertexId,
        b: VertexId,
    ) -> Result<(Vec<VertexId>, f64), NetworkError> {
        self.require(a)?;
        self.require(b)?;
        if a == b {
            return Ok((vec![a], 0.0));
        }
        let mut dist: Vec<f64> = vec![f64::INFINITY; self.adj.len()];
        let mut parent: Vec<VertexId> = vec![usize::MAX; self.adj.len()];
        let mut heap = BinaryHeap::new();
        dist[a] = 0.0;
        heap.push(TravelState {
            cost: 0.0,
            vertex: a,
        });
        while let Some(TravelState { cost, vertex }) = heap.pop() {
            if cost > dist[vertex] {
                continue;
            }
            if vertex == b {
                return Ok((walk_parents(&parent, a, b), cost));
            }
            for &(next, weight) in &self.adj[vertex] {
                let next_cost = cost + weight;
                if next_cost < dist[next] {
                    dist[next] = next_cost;
                    parent[next] = vertex;
                    heap.push(TravelState {
                        cost: next_cost,
                        vertex: next,
                    });
                }
            }
        }
        Err(NetworkError::Unreachable { from: a, to: b })
    }

    /// Travel cost from `a` to every vertex (`None` where unreachable).
    pub fn travel_costs_from(&self, a: VertexId) -> Result<Vec<Option<f64>>, NetworkError> {
        self.require(a)?;
        let mut dist: Vec<f64> = vec![f64::INFINITY; self.adj.len()];
        let mut heap = BinaryHeap::new();
        dist[a] = 0.0;
        heap.push(TravelState {
            cost: 0.0,
            vertex: a,
        });
        while let Some(TravelState { cost, vertex }) = heap.pop() {
            if cost > dist[vertex] {
                continue;
            }
            for &(next, weight) in &self.adj[vertex] {
                let next_cost = cost + weight;
                if next_cost < dist[next] {
                    dist[next] = next_cost;
                    heap.push(TravelState {
                        cost: next_cost,
                        vertex: next,
                    });
                }
            }
        }
        Ok(dist.iter().map(|&d| d.is_finite().then_some(d)).collect())
    }

    /// Label-setting search from `origin` minimizing `(detour, travel)`
    /// lexicographically w.r.t. `pref`. One settled label per vertex; the
    /// order is isotone because every edge adds a non-negative pair.
    pub fn min_detour_tree(&self, pref: &PreferredPath, origin: VertexId) -> MinDetourTree {
        let mut labels: Vec<Option<(f64, f64)>> = vec![None; self.adj.len()];
        let mut parent: Vec<VertexId> = vec![usize::MAX; self.adj.len()];
        let mut heap = BinaryHeap::new();
        labels[origin] = Some((0.0, 0.0));
        heap.push(DetourState {
            detour: 0.0,
            travel: 0.0,
            vertex: origin,
        });
        while let Some(DetourState {
            detour,
            travel,
            vertex,
        }) = heap.pop()
        {
            if labels[vertex] != Some((detour, travel)) {
                continue;
            }
            for &(next, weight) in &self.adj[vertex] {
                let cand = (
                    detour + pref.edge_detour(vertex, next, weight),
                    travel + weight,
                );
                if labels[next].is_none_or(|best| cand < best) {
                    labels[next] = Some(cand);
                    parent[next] = vertex;
                    heap.push(DetourState {
                        detour: cand.0,
                        travel: cand.1,
                        vertex: next,
                    });
                }
            }
        }
        MinDetourTree {
            origin,
            labels,
            parent,
        }
    }

    /// Minimum-detour path from `a` to `b` (ties by travel), or `None` when
    /// `b` is unreachable or the realized travel exceeds `budget_cap`.
    pub fn min_detour_path(
        &self,
        a: VertexId,
        b: VertexId,
        pref: &PreferredPath,
        budget_cap: f64,
    ) -> Option<MinDetourLeg> {
        if !self.contains(a) || !self.contains(b) {
            return None;
        }
        let tree = self.min_detour_tree(pref, a);
        let leg = tree.leg_to(b)?;
        approx_le(leg.travel, budget_cap).then_some(leg)
    }
}

/// Result of one minimum-detour point-to-point search.
#[derive(Clone, Debug, PartialEq)]
pub struct MinDetourLeg {
    pub path: Vec<VertexId>,
    pub detour: f64,
    pub travel: f64,
}

/// Settled labels and parent pointers of one minimum-detour search.
pub struct MinDetourTree {
    origin: VertexId,
    labels: Vec<Option<(f64, f64)>>,
    parent: Vec<VertexId>,
}

impl MinDetourTree {
    pub fn label(&self, v: VertexId) -> Option<(f64, f64)> {
        self.labels.get(v).copied().flatten()
    }

    pub fn leg_to(&self, v: VertexId) -> Option<MinDetourLeg> {
        let (detour, travel) = self.label(v)?;
        Some(MinDetourLeg {
            path: walk_parents(&self.parent, self.origin, v),
            detour,
            travel,
        })
    }
}

fn walk_parents(parent: &[VertexId], from: VertexId, to: VertexId) -> Vec<VertexId> {
    let mut path = vec![to];
    let mut cur = to;
    while cur != from {
        cur = parent[cur];
        path.push(cur);
    }
    path.reverse();
    path
}

fn euclidean(a: (f64, f64), b: (f64, f64)) -> f64 {
    (a.0 - b.0).hypot(a.1 - b.1)
}

fn edge_key(u: VertexId, v: VertexId) -> (VertexId, VertexId) {
    (u.min(v), u.max(v))
}

#[derive(PartialEq)]
struct TravelState {
    cost: f64,
    vertex: VertexId,
}

impl Eq for TravelState {}

impl Ord for TravelState {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        other
            .cost
            .total_cmp(&self.cost)
            .then_with(|| other.vertex.cmp(&self.vertex))
    }
}

impl PartialOrd for TravelState {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(PartialEq)]
struct DetourState {
    detour: f64,
    travel: f64,
    vertex: VertexId,
}

impl Eq for DetourState {}

impl Ord for DetourState {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        other
            .detour
            .total_cmp(&self.detour)
            .then_with(|| other.travel.total_cmp(&self.travel))
            .then_with(|| other.vertex.cmp(&self.vertex))
    }
}

impl PartialOrd for DetourState {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// The worker's given route; detours are measured against its edge set.
#[derive(Clone, Debug)]
pub struct PreferredPath {
    vertices: Vec<VertexId>,
    edges: HashSet<(VertexId, VertexId)>,
    total_cost: f64,
}

impl PreferredPath {
    pub fn new(net: &RoadNetwork, vertices: Vec<VertexId>) -> Result<Self, NetworkError> {
        if vertices.is_empty() {
            return Err(NetworkError::EmptyPath);
        }
        for &v in &vertices {
            net.require(v)?;
        }
        let mut edges = HashSet::new();
        let mut total_cost = 0.0;
        for pair in vertices.windows(2) {
            let (u, v) = (pair[0], pair[1]);
            let cost = net
                .edge_cost(u, v)
                .ok_or(NetworkError::NotAdjacent { u, v })?;
            edges.insert(edge_key(u, v));
            total_cost += cost;
        }
        Ok(PreferredPath {
            vertices,
            edges,
            total_cost,
        })
    }

    pub fn source(&self) -> VertexId {
        self.vertices[0]
    }

    pub fn dest(&self) -> VertexId {
        *self.vertices.last().unwrap()
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn total_cost(&self) -> f64 {
        self.total_cost
    }

    /// Whether the unordered edge `{u, v}` lies on the preferred path.
    pub fn on_path(&self, u: VertexId, v: VertexId) -> bool {
        self.edges.contains(&edge_key(u, v))
    }

    /// Detour contribution of traversing `(u, v)`: zero on preferred-path
    /// edges, the full cost otherwise. Applies per traversal.
    pub fn edge_detour(&self, u: VertexId, v: VertexId, cost: f64) -> f64 {
        if self.on_path(u, v) {
            0.0
        } else {
            cost
        }
    }
}
