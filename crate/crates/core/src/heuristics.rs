//! Approximate solvers over the task graph, sharing one best-first skeleton
//! parameterized by an expansion policy:
//!
//! - DOH expands every untried neighbor (all non-dominated task-graph paths
//!   in increasing detour order).
//! - kGH is DOH on the k-nearest-neighbor reduction of the graph.
//! - MDH spawns only the child minimizing the resulting detour.
//! - MRH spawns only the neighbor with the highest reward.
//!
//! All four report expanded network paths, so their outputs are directly
//! comparable with the exact solver's. A path's reward is the sum over its
//! node sequence: a task vertex the realized legs merely pass through is not
//! performed and pays nothing.

use std::collections::BinaryHeap;

use crate::num::approx_le;
use crate::query::Query;
use crate::skyline::{SkylinePoint, SkylineSet};
use crate::solvers::SearchStats;
use crate::taskgraph::{TaskGraph, TgNode};

/// How a dequeued path chooses children.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExpansionPolicy {
    /// Every neighbor not already on the path (DOH, kGH).
    All,
    /// The single neighbor minimizing the child's detour (MDH).
    MinDetour,
    /// The single neighbor with the highest reward (MRH).
    MaxReward,
}

#[derive(Clone, Debug)]
pub struct HeuristicOutcome {
    pub skyline: SkylineSet,
    pub stats: SearchStats,
}

/// Detour-oriented heuristic: all non-dominated task-graph paths.
pub fn doh(tg: &TaskGraph, query: &Query) -> HeuristicOutcome {
    run_policy(tg, query, ExpansionPolicy::All, false)
}

/// k-NN graph heuristic: DOH over the reduced graph.
pub fn kgh(tg: &TaskGraph, query: &Query, k: usize) -> HeuristicOutcome {
    run_policy(&tg.knn_reduce(k), query, ExpansionPolicy::All, false)
}

/// Minimum-detour greedy heuristic.
pub fn mdh(tg: &TaskGraph, query: &Query) -> HeuristicOutcome {
    run_policy(tg, query, ExpansionPolicy::MinDetour, false)
}

/// Maximum-reward greedy heuristic.
pub fn mrh(tg: &TaskGraph, query: &Query) -> HeuristicOutcome {
    run_policy(tg, query, ExpansionPolicy::MaxReward, false)
}

/// Shared skeleton. Dequeues task-graph paths in non-decreasing detour order
/// (ties by travel, then insertion order); destination-ending paths go
/// through skyline insertion and are not expanded further; a child survives
/// only if its travel plus the direct completion to the destination fits the
/// budget — with no fallback child when the policy picks a single one.
pub fn run_policy(
    tg: &TaskGraph,
    query: &Query,
    policy: ExpansionPolicy,
    record: bool,
) -> HeuristicOutcome {
    let budget = query.budget();
    let mut skyline = SkylineSet::with_budget(budget);
    let mut stats = SearchStats::default();
    let mut queue = BinaryHeap::new();
    let mut seq = 0u64;

    queue.push(Entry {
        detour: 0.0,
        travel: 0.0,
        seq,
        path: TgPath {
            nodes: vec![TgNode::Source],
            travel: 0.0,
            detour: 0.0,
            reward: 0.0,
        },
    });

    while let Some(entry) = queue.pop() {
        let p = entry.path;
        stats.dequeued += 1;
        if record {
            stats.dequeue_detours.push(p.detour);
            stats.trace.push(format!(
                "pop detour={} travel={} reward={} nodes={:?}",
                p.detour, p.travel, p.reward, p.nodes
            ));
        }
        if !approx_le(p.detour, budget) {
            break;
        }
        let last = *p.nodes.last().unwrap();
        if last == TgNode::Dest {
            let path = tg
                .expand_to_network_path(&p.nodes)
                .expect("dequeued path walks existing edges");
            let accepted = skyline.insert(SkylinePoint {
                detour: p.detour,
                travel: p.travel,
                reward: p.reward,
                path,
            });
            if record && accepted {
                stats.trace.push(format!("skyline+ nodes={:?}", p.nodes));
            }
            continue;
        }

        let eligible = || {
            tg.neighbors(last)
                .iter()
                .filter(|(n, _)| !p.nodes.contains(n))
        };
        match policy {
            ExpansionPolicy::All => {
                for (n, e) in eligible() {
                    try_child(
                        tg, query, &p, *n, e.detour, e.travel, &mut queue, &mut seq, &mut stats,
                    );
                }
            }
            ExpansionPolicy::MinDetour => {
                let pick = eligible().min_by(|(na, ea), (nb, eb)| {
                    ea.detour
                        .total_cmp(&eb.detour)
                        .then(ea.travel.total_cmp(&eb.travel))
                        .then(na.cmp(nb))
                });
                if let Some((n, e)) = pick {
                    try_child(
                        tg, query, &p, *n, e.detour, e.travel, &mut queue, &mut seq, &mut stats,
                    );
                }
            }
            ExpansionPolicy::MaxReward => {
                let pick = eligible().min_by(|(na, ea), (nb, eb)| {
                    let ra = query.reward(tg.vertex_of(*na));
                    let rb = query.reward(tg.vertex_of(*nb));
                    rb.total_cmp(&ra)
                        .then(ea.detour.total_cmp(&eb.detour))
                        .then(na.cmp(nb))
                });
                if let Some((n, e)) = pick {
                    try_child(
                        tg, query, &p, *n, e.detour, e.travel, &mut queue, &mut seq, &mut stats,
                    );
                }
            }
        }
    }

    HeuristicOutcome { skyline, stats }
}

#[allow(clippy::too_many_arguments)]
fn try_child(
    tg: &TaskGraph,
    query: &Query,
    p: &TgPath,
    node: TgNode,
    edge_detour: f64,
    edge_travel: f64,
    queue: &mut BinaryHeap<Entry>,
    seq: &mut u64,
    stats: &mut SearchStats,
) {
    let mut nodes = p.nodes.clone();
    nodes.push(node);
    let child = TgPath {
        nodes,
        travel: p.travel + edge_travel,
        detour: p.detour + edge_detour,
        reward: p.reward + query.reward(tg.vertex_of(node)),
    };
    stats.generated += 1;
    if matches!(node, TgNode::Task(_)) {
        stats.task_paths += 1;
    }
    // Traveling straight to the destination is a lower bound on any
    // completion of this child; a child that cannot even do that dies here.
    let Some(completion) = tg.completion_travel(node) else {
        return;
    };
    if !approx_le(child.travel + completion, query.budget()) {
        return;
    }
    *seq += 1;
    queue.push(Entry {
        detour: child.detour,
        travel: child.travel,
        seq: *seq,
        path: child,
    });
}

#[derive(Clone, Debug)]
struct TgPath {
    nodes: Vec<TgNode>,
    travel: f64,
    detour: f64,
    reward: f64,
}

struct Entry {
    detour: f64,
    travel: f64,
    seq: u64,
    path: TgPath,
}

impl PartialEq for Entry {
    fn eq(&self, other: &Self) -> bool {
        self.seq == other.seq
    }
}

impl Eq for Entry {}

impl Ord for Entry {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        other
            .detour
            .total_cmp(&self.detour)
            .then_with(|| other.travel.total_cmp(&self.travel))
            .then_with(|| other.seq.cmp(&self.seq))
    }
}

impl PartialOrd for Entry {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
