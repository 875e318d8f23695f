//! Condensed task graph: a directed graph over the source, the feasible
//! tasks, and the destination, whose edges are minimum-detour network legs
//! annotated with their realized `(detour, travel)` pair and path.
//!
//! Built with one label-setting search per origin node (at most |T| + 1
//! searches). Exactly one leg is kept per node pair — this single-leg
//! condensation is what makes the graph heuristics approximate: a pair may
//! also be connected by a higher-detour but cheaper leg that the condensed
//! graph no longer remembers.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::network::{RoadNetwork, VertexId};
use crate::num::approx_le;
use crate::query::Query;

/// Node of the task graph. The derived order (source, tasks by id,
/// destination) is the tie-breaking "node id" order used everywhere.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TgNode {
    Source,
    Task(VertexId),
    Dest,
}

/// A realized minimum-detour leg between two task-graph nodes.
#[derive(Clone, Debug, PartialEq)]
pub struct TgEdge {
    pub detour: f64,
    pub travel: f64,
    pub path: Vec<VertexId>,
}

#[derive(Debug, Error)]
pub enum TaskGraphError {
    #[error("no task-graph edge from {0:?} to {1:?}")]
    MissingEdge(TgNode, TgNode),
    #[error("empty task-graph path")]
    EmptyPath,
}

#[derive(Clone, Debug)]
pub struct TaskGraph {
    source: VertexId,
    dest: VertexId,
    tasks: Vec<VertexId>,
    out: BTreeMap<TgNode, Vec<(TgNode, TgEdge)>>,
}

impl TaskGraph {
    /// Builds the graph for a query.
    ///
    /// A task enters iff the minimum-detour leg from the source reaches it
    /// with travel within the budget; a task-to-task edge exists iff its leg
    /// travel fits the remaining budget after entering the origin task; every
    /// included task connects to the destination unconditionally.
    pub fn build(net: &RoadNetwork, query: &Query) -> TaskGraph {
        let s = query.source();
        let d = query.dest();
        let b = query.budget();

        let mut out: BTreeMap<TgNode, Vec<(TgNode, TgEdge)>> = BTreeMap::new();

        let from_source = net.min_detour_tree(query.pref(), s);
        let mut tasks: Vec<VertexId> = Vec::new();
        let mut entry_travel: BTreeMap<VertexId, f64> = BTreeMap::new();
        let mut source_edges = Vec::new();
        for &t in query.tasks().keys() {
            if t == s || t == d {
                continue;
            }
            if let Some(leg) = from_source.leg_to(t) {
                if approx_le(leg.travel, b) {
                    tasks.push(t);
                    entry_travel.insert(t, leg.travel);
                    source_edges.push((
                        TgNode::Task(t),
                        TgEdge {
                            detour: leg.detour,
                            travel: leg.travel,
                            path: leg.path,
                        },
                    ));
                }
            }
        }
        out.insert(TgNode::Source, source_edges);

        for &ti in &tasks {
            let tree = net.min_detour_tree(query.pref(), ti);
            let cap = b - entry_travel[&ti];
            let mut edges = Vec::new();
            for &tj in &tasks {
                if tj == ti {
                    continue;
                }
                if let Some(leg) = tree.leg_to(tj) {
                    if approx_le(leg.travel, cap) {
                        edges.push((
                            TgNode::Task(tj),
                            TgEdge {
                                detour: leg.detour,
                                travel: leg.travel,
                                path: leg.path,
                            },
                        ));
                    }
                }
            }
            if let Some(leg) = tree.leg_to(d) {
                edges.push((
                    TgNode::Dest,
                    TgEdge {
                        detour: leg.detour,
                        travel: leg.travel,
                        path: leg.path,
                    },
                ));
            }
            out.insert(TgNode::Task(ti), edges);
        }

        TaskGraph {
            source: s,
            dest: d,
            tasks,
            out,
        }
    }

    /// Keeps, per task, only the outgoing task-to-task edges to the `k`
    /// nearest task neighbors by detour (ties by travel, then node id).
    /// Source and destination edges are untouched.
    pub fn knn_reduce(&self, k: usize) -> TaskGraph {
        assert!(k >= 1, "k must be at least 1");
        let mut out = self.out.clone();
        for (&node, edges) in out.iter_mut() {
            if node == TgNode::Source {
                continue;
            }
            let mut task_edges: Vec<(TgNode, TgEdge)> = Vec::new();
            let mut rest: Vec<(TgNode, TgEdge)> = Vec::new();
            for e in edges.drain(..) {
                match e.0 {
                    TgNode::Task(_) => task_edges.push(e),
                    _ => rest.push(e),
                }
            }
            task_edges.sort_by(|a, b| {
                a.1.detour
                    .total_cmp(&b.1.detour)
                    .then(a.1.travel.total_cmp(&b.1.travel))
                    .then(a.0.cmp(&b.0))
            });
            task_edges.truncate(k);
            task_edges.extend(rest);
            task_edges.sort_by_key(|a| a.0);
            *edges = task_edges;
        }
        TaskGraph {
            source: self.source,
            dest: self.dest,
            tasks: self.tasks.clone(),
            out,
        }
    }

    pub fn source_vertex(&self) -> VertexId {
        self.source
    }

    pub fn dest_vertex(&self) -> VertexId {
        self.dest
    }

    /// Included (feasible) task vertices, ascending.
    pub fn tasks(&self) -> &[VertexId] {
        &self.tasks
    }

    pub fn vertex_of(&self, node: TgNode) -> VertexId {
        match node {
            TgNode::Source => self.source,
            TgNode::Task(t) => t,
            TgNode::Dest => self.dest,
        }
    }

    pub fn neighbors(&self, node: TgNode) -> &[(TgNode, TgEdge)] {
        self.out.get(&node).map_or(&[], |v| v.as_slice())
    }

    pub fn edge(&self, from: TgNode, to: TgNode) -> Option<&TgEdge> {
        self.neighbors(from)
            .iter()
            .find(|(n, _)| *n == to)
            .map(|(_, e)| e)
    }

    pub fn edge_count(&self) -> usize {
        self.out.values().map(Vec::len).sum()
    }

    /// Travel cost of going straight to the destination from `node`
    /// (zero at the destination itself); `None` when no such leg exists.
    pub fn completion_travel(&self, node: TgNode) -> Option<f64> {
        match node {
            TgNode::Dest => Some(0.0),
            _ => self.edge(node, TgNode::Dest).map(|e| e.travel),
        }
    }

    /// Concatenates the realized legs of a node sequence into one network
    /// path, collapsing the duplicated junction vertices.
    pub fn expand_to_network_path(
        &self,
        nodes: &[TgNode],
    ) -> Result<Vec<VertexId>, TaskGraphError> {
        if nodes.is_empty() {
            return Err(TaskGraphError::EmptyPath);
        }
        let mut path = vec![self.vertex_of(nodes[0])];
        for pair in nodes.windows(2) {
            let edge = self
                .edge(pair[0], pair[1])
                .ok_or(TaskGraphError::MissingEdge(pair[0], pair[1]))?;
            path.extend_from_slice(&edge.path[1..]);
        }
        Ok(path)
    }

    /// Edge list `from to detour travel`, one line per directed edge, in node
    /// order; `from`/`to` are network vertex ids.
    pub fn dump(&self) -> String {
        let mut outstr = String::new();
        for (&node, edges) in &self.out {
            for (to, e) in edges {
                outstr.push_str(&format!(
                    "{} {} {:?} {:?}\n",
                    self.vertex_of(node),
                    self.vertex_of(*to),
                    e.detour,
                    e.travel
                ));
            }
        }
        outstr
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::oracle::{brute_min_detour_leg, OracleLimits};
    use crate::path::recompute_costs;

    fn values(tg: &TaskGraph) -> Vec<(VertexId, VertexId, f64, f64)> {
        let mut v: Vec<_> = tg
            .out
            .iter()
            .flat_map(|(&from, edges)| {
                edges
                    .iter()
                    .map(move |(to, e)| (tg.vertex_of(from), tg.vertex_of(*to), e.detour, e.travel))
            })
            .collect();
        v.sort_by(|a, b| a.partial_cmp(b).unwrap());
        v
    }

    #[test]
    fn fixture_graph_matches_expected_edges() {
        let fx = fixtures::eight_vertex();
        let q = fx.query(21.0);
        let tg = TaskGraph::build(&fx.net, &q);

        let mut expected = vec![
            (fx.s, fx.t1, 3.0, 3.0),
            (fx.s, fx.t2, 2.0, 7.0),
            (fx.s, fx.t3, 2.0, 17.0),
            (fx.t1, fx.d, 3.0, 18.0),
            (fx.t2, fx.d, 2.0, 12.0),
            (fx.t3, fx.d, 2.0, 2.0),
            (fx.t1, fx.t2, 5.0, 10.0),
            (fx.t2, fx.t1, 5.0, 10.0),
            (fx.t2, fx.t3, 4.0, 14.0),
        ];
        expected.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert_eq!(values(&tg), expected);
        // The reverse edge does not fit t3's remaining budget.
        assert!(tg.edge(TgNode::Task(fx.t3), TgNode::Task(fx.t2)).is_none());
    }

    #[test]
    fn zero_budget_graph_has_no_tasks() {
        let fx = fixtures::eight_vertex();
        let q = fx.query(0.0);
        let tg = TaskGraph::build(&fx.net, &q);
        assert!(tg.tasks().is_empty());
        assert_eq!(tg.edge_count(), 0);
    }

    #[test]
    fn edges_match_oracle_legs() {
        let fx = fixtures::eight_vertex();
        let q = fx.query(21.0);
        let tg = TaskGraph::build(&fx.net, &q);
        let pref = fx.pref();
        for (&from, edges) in &tg.out {
            for (to, e) in edges {
                let cap = e.travel + 1.0;
                let best = brute_min_detour_leg(
                    &fx.net,
                    &pref,
                    tg.vertex_of(from),
                    tg.vertex_of(*to),
                    cap,
                    OracleLimits::default(),
                )
                .unwrap()
                .unwrap();
                assert_eq!(best, (e.detour, e.travel));
            }
        }
    }

    #[test]
    fn knn_reduce_keeps_closest_by_detour() {
        let fx = fixtures::eight_vertex();
        let q = fx.query(21.0);
        let tg = TaskGraph::build(&fx.net, &q);

        let k1 = tg.knn_reduce(1);
        // t2's task neighbors are t1 (detour 5) and t3 (detour 4): keep t3.
        assert!(k1.edge(TgNode::Task(fx.t2), TgNode::Task(fx.t3)).is_some());
        assert!(k1.edge(TgNode::Task(fx.t2), TgNode::Task(fx.t1)).is_none());
        // Source and destination edges survive.
        assert!(k1.edge(TgNode::Source, TgNode::Task(fx.t1)).is_some());
        assert!(k1.edge(TgNode::Task(fx.t2), TgNode::Dest).is_some());

        // Degrees are below 5; k = 5 is the identity.
        let k5 = tg.knn_reduce(5);
        assert_eq!(values(&k5), values(&tg));
    }

    #[test]
    fn knn_output_is_subset() {
        let fx = fixtures::eight_vertex();
        let q = fx.query(21.0);
        let tg = TaskGraph::build(&fx.net, &q);
        for k in 1..=3 {
            let reduced = tg.knn_reduce(k);
            for (from, to, detour, travel) in values(&reduced) {
                assert!(values(&tg).contains(&(from, to, detour, travel)));
            }
            assert_eq!(reduced.tasks(), tg.tasks());
        }
    }

    #[test]
    fn expand_composes_legs() {
        let fx = fixtures::eight_vertex();
        let q = fx.query(21.0);
        let tg = TaskGraph::build(&fx.net, &q);

        let path = tg
            .expand_to_network_path(&[TgNode::Source, TgNode::Task(fx.t2), TgNode::Dest])
            .unwrap();
        assert_eq!(path, vec![fx.s, fx.v1, fx.t2, fx.v1, fx.v2, fx.d]);
        let costs = recompute_costs(&fx.net, &q, &path).unwrap();
        assert_eq!((costs.travel, costs.detour), (19.0, 4.0));

        let path = tg
            .expand_to_network_path(&[TgNode::Source, TgNode::Task(fx.t3), TgNode::Dest])
            .unwrap();
        let costs = recompute_costs(&fx.net, &q, &path).unwrap();
        assert_eq!((costs.travel, costs.detour), (19.0, 4.0));

        let single = tg
            .expand_to_network_path(&[TgNode::Source, TgNode::Task(fx.t1)])
            .unwrap();
        assert_eq!(single, vec![fx.s, fx.t1]);

        assert!(matches!(
            tg.expand_to_network_path(&[TgNode::Task(fx.t3), TgNode::Task(fx.t2)]),
            Err(TaskGraphError::MissingEdge(..))
        ));
    }

    #[test]
    fn leg_additivity_on_fixture() {
        let fx = fixtures::eight_vertex();
        let q = fx.query(21.0);
        let tg = TaskGraph::build(&fx.net, &q);
        let nodes = [
            TgNode::Source,
            TgNode::Task(fx.t2),
            TgNode::Task(fx.t3),
            TgNode::Dest,
        ];
        let mut travel = 0.0;
        let mut detour = 0.0;
        for pair in nodes.windows(2) {
            let e = tg.edge(pair[0], pair[1]).unwrap();
            travel += e.travel;
            detour += e.detour;
        }
        let path = tg.expand_to_network_path(&nodes).unwrap();
        let costs = recompute_costs(&fx.net, &q, &path).unwrap();
        assert_eq!(costs.travel, travel);
        assert_eq!(costs.detour, detour);
    }

    #[test]
    fn dump_lists_edges() {
        let fx = fixtures::eight_vertex();
        let q = fx.query(21.0);
        let tg = TaskGraph::build(&fx.net, &q);
        let dump = tg.dump();
        assert_eq!(dump.lines().count(), 9);
        assert!(dump.contains(&format!("{} {} 2.0 7.0", fx.s, fx.t2)));
        assert!(!dump.contains(&format!("{} {}", fx.t3, fx.t2)));
    }
}
