//! Exact skyline search: best-first expansion of network paths in
//! non-decreasing detour order with four safe prunings.
//!
//! Unlike plain Dijkstra, a vertex may be expanded more than once — doubling
//! back through an already-visited vertex can still reach a new task. The
//! prunings cut exactly the re-expansions that provably cannot lead to a new
//! non-dominated result:
//!
//! - P1: no task collected yet and the extension vertex is already on the path.
//! - P2: the extension vertex already appears at or after the last collected task.
//! - P3: the same ordered task sequence was already completed at no greater
//!   travel cost.
//! - P4: travel plus the Euclidean distance to the destination exceeds the
//!   budget (degrades to the plain budget check when coordinates are absent).

use std::collections::{BinaryHeap, HashMap};

use crate::network::{RoadNetwork, VertexId};
use crate::num::approx_le;
use crate::path::PathState;
use crate::query::Query;
use crate::skyline::{SkylinePoint, SkylineSet};
use crate::solvers::SearchStats;

/// Individual pruning switches; disabling any of them only slows the search
/// down, the result set is unchanged. The plain travel-within-budget check is
/// not a switch — it also guarantees termination.
#[derive(Clone, Copy, Debug)]
pub struct PruningToggles {
    pub p1: bool,
    pub p2: bool,
    pub p3: bool,
    pub p4: bool,
}

impl Default for PruningToggles {
    fn default() -> Self {
        PruningToggles {
            p1: true,
            p2: true,
            p3: true,
            p4: true,
        }
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct ExactOptions {
    pub pruning: PruningToggles,
    /// Record per-dequeue detours and a readable trace in the stats.
    pub record: bool,
}

/// Best travel cost seen per ordered task-visit sequence (pruning P3).
///
/// Keys keep revisit occurrences, so the last key element is always the task
/// the path currently ends at — two paths compare only when they end on the
/// same task having collected the same tasks in the same order.
#[derive(Debug, Default)]
pub struct VisitedTaskRegistry {
    best_travel: HashMap<Vec<VertexId>, f64>,
}

impl VisitedTaskRegistry {
    /// Returns true when the sequence was already completed at a travel cost
    /// no greater than `travel` (prune); otherwise records the improvement.
    pub fn check_and_register(&mut self, seq: &[VertexId], travel: f64) -> bool {
        match self.best_travel.get_mut(seq) {
            Some(stored) if approx_le(*stored, travel) => true,
            Some(stored) => {
                *stored = travel;
                false
            }
            None => {
                self.best_travel.insert(seq.to_vec(), travel);
                false
            }
        }
    }

    pub fn len(&self) -> usize {
        self.best_travel.len()
    }

    pub fn is_empty(&self) -> bool {
        self.best_travel.is_empty()
    }
}

/// Pruning P4: the straight-line completion bound already overruns the budget.
pub fn check_p4(travel: f64, lower_bound: f64, budget: f64) -> bool {
    !approx_le(travel + lower_bound, budget)
}

pub fn exact_skyline(net: &RoadNetwork, query: &Query) -> SkylineSet {
    exact_skyline_with(net, query, ExactOptions::default()).0
}

pub fn exact_skyline_with(
    net: &RoadNetwork,
    query: &Query,
    opts: ExactOptions,
) -> (SkylineSet, SearchStats) {
    let mut skyline = SkylineSet::with_budget(query.budget());
    let mut stats = SearchStats::default();
    let mut registry = VisitedTaskRegistry::default();
    let mut queue = BinaryHeap::new();
    let mut seq = 0u64;

    queue.push(QueueEntry {
        detour: 0.0,
        travel: 0.0,
        seq,
        state: PathState::start(query.source(), query),
    });

    while let Some(entry) = queue.pop() {
        let p = entry.state;
        stats.dequeued += 1;
        if opts.record {
            stats.dequeue_detours.push(p.detour());
            stats.trace.push(format!(
                "pop detour={} travel={} path={:?}",
                p.detour(),
                p.travel(),
                p.vertices()
            ));
        }
        // Everything still queued has detour >= this one; nothing beyond the
        // budget can be non-dominated.
        if !approx_le(p.detour(), query.budget()) {
            break;
        }
        let v = p.last();

        if v == query.dest() && p.has_task() {
            let accepted = skyline.insert(SkylinePoint {
                detour: p.detour(),
                travel: p.travel(),
                reward: p.reward(),
                path: p.vertices().to_vec(),
            });
            if opts.record && accepted {
                stats.trace.push(format!("skyline+ {:?}", p.vertices()));
            }
        }

        if query.is_task(v)
            && opts.pruning.p3
            && registry.check_and_register(p.task_visits(), p.travel())
        {
            continue;
        }

        for &(u, cost) in net.neighbors(v) {
            let revisit_pruning_on = if p.has_task() {
                opts.pruning.p2
            } else {
                opts.pruning.p1
            };
            if revisit_pruning_on && !p.may_extend(u) {
                continue;
            }
            let travel = p.travel() + cost;
            let bound = if opts.pruning.p4 {
                net.euclidean_lower_bound(u, query.dest())
            } else {
                0.0
            };
            if check_p4(travel, bound, query.budget()) {
                continue;
            }
            seq += 1;
            let child = p.extend(u, cost, query);
            stats.generated += 1;
            if query.is_task(u) {
                stats.task_paths += 1;
            }
            queue.push(QueueEntry {
                detour: child.detour(),
                travel: child.travel(),
                seq,
                state: child,
            });
        }
    }
    (skyline, stats)
}

/// Queue entries pop in ascending `(detour, travel, insertion order)`.
/// Travel-first tie-breaking lets P3 register the cheapest representative of
/// a task sequence before its costlier twins arrive.
struct QueueEntry {
    detour: f64,
    travel: f64,
    seq: u64,
    state: PathState,
}

impl PartialEq for QueueEntry {
    fn eq(&self, other: &Self) -> bool {
        self.seq == other.seq
    }
}

impl Eq for QueueEntry {}

impl Ord for QueueEntry {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        other
            .detour
            .total_cmp(&self.detour)
            .then_with(|| other.travel.total_cmp(&self.travel))
            .then_with(|| other.seq.cmp(&self.seq))
    }
}

impl PartialOrd for QueueEntry {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::oracle::{brute_skyline, OracleLimits};

    #[test]
    fn fixture_skyline_paths() {
        let fx = fixtures::eight_vertex();
        let q = fx.query(21.0);
        let sky = exact_skyline(&fx.net, &q);
        assert_eq!(sky.pairs(), vec![(4.0, 5.0), (14.0, 9.0)]);
        assert_eq!(
            sky.points()[0].path,
            vec![fx.s, fx.v1, fx.v2, fx.d, fx.t3, fx.d]
        );
        assert_eq!(
            sky.points()[1].path,
            vec![fx.s, fx.v1, fx.t2, fx.v4, fx.t3, fx.d]
        );
        assert_eq!(sky.points()[0].travel, 19.0);
        assert_eq!(sky.points()[1].travel, 19.0);
    }

    #[test]
    fn infeasible_budget_yields_empty_set() {
        let fx = fixtures::eight_vertex();
        let q = fx.query(10.0);
        assert!(exact_skyline(&fx.net, &q).is_empty());
    }

    #[test]
    fn budget_boundary_is_admitted() {
        // P3' = s,t1,s,v1,v2,d has travel exactly 21; it must be explored
        // (and then rejected only by dominance, not by the budget).
        let fx = fixtures::eight_vertex();
        let q = fx.query(21.0);
        let (_, stats) = exact_skyline_with(
            &fx.net,
            &q,
            ExactOptions {
                record: true,
                ..ExactOptions::default()
            },
        );
        assert!(stats
            .trace
            .iter()
            .any(|l| l.contains("travel=21") && l.contains("pop")));
    }

    #[test]
    fn dequeue_detours_are_monotone() {
        let fx = fixtures::eight_vertex();
        let q = fx.query(21.0);
        let (_, stats) = exact_skyline_with(
            &fx.net,
            &q,
            ExactOptions {
                record: true,
                ..ExactOptions::default()
            },
        );
        assert!(stats
            .dequeue_detours
            .windows(2)
            .all(|w| w[0] <= w[1] + 1e-12));
    }

    #[test]
    fn registry_prunes_equal_travel_same_order() {
        let mut reg = VisitedTaskRegistry::default();
        // s,t1,s,v1,t2 (travel 13) registers; s,t1,v3,v1,t2 (travel 13) prunes.
        assert!(!reg.check_and_register(&[4, 5], 13.0));
        assert!(reg.check_and_register(&[4, 5], 13.0));
        assert!(reg.check_and_register(&[4, 5], 15.0));
        // A strictly cheaper arrival re-registers.
        assert!(!reg.check_and_register(&[4, 5], 11.0));
        assert!(reg.check_and_register(&[4, 5], 12.0));
    }

    #[test]
    fn registry_keys_are_ordered_sequences() {
        let mut reg = VisitedTaskRegistry::default();
        assert!(!reg.check_and_register(&[4, 5], 10.0));
        // Same task set, different order: distinct key, no prune.
        assert!(!reg.check_and_register(&[5, 4], 10.0));
        assert_eq!(reg.len(), 2);
    }

    #[test]
    fn branch_fixture_exercises_p3() {
        // With the v3 branch, two equal-travel routes collect (t1, t2) in the
        // same order; pruning the later one must not change the skyline.
        let (fx, _) = fixtures::nine_vertex_with_branch();
        let q = fx.query(21.0);
        let with = exact_skyline(&fx.net, &q);
        let without = exact_skyline_with(
            &fx.net,
            &q,
            ExactOptions {
                pruning: PruningToggles {
                    p3: false,
                    ..PruningToggles::default()
                },
                ..ExactOptions::default()
            },
        )
        .0;
        assert_eq!(with.pairs(), without.pairs());
    }

    #[test]
    fn each_pruning_disabled_keeps_fixture_result() {
        let fx = fixtures::eight_vertex();
        let q = fx.query(21.0);
        let reference = exact_skyline(&fx.net, &q).pairs();
        for disabled in 0..4 {
            let mut toggles = PruningToggles::default();
            match disabled {
                0 => toggles.p1 = false,
                1 => toggles.p2 = false,
                2 => toggles.p3 = false,
                _ => toggles.p4 = false,
            }
            let sky = exact_skyline_with(
                &fx.net,
                &q,
                ExactOptions {
                    pruning: toggles,
                    ..ExactOptions::default()
                },
            )
            .0;
            assert_eq!(sky.pairs(), reference, "pruning {} disabled", disabled + 1);
        }
    }

    #[test]
    fn coords_do_not_change_the_result() {
        let plain = fixtures::eight_vertex();
        let with_coords = fixtures::eight_vertex_with_coords();
        let a = exact_skyline(&plain.net, &plain.query(21.0));
        let b = exact_skyline(&with_coords.net, &with_coords.query(21.0));
        assert_eq!(a.pairs(), b.pairs());
    }

    #[test]
    fn p4_boundary_semantics() {
        assert!(check_p4(20.0, 2.0, 21.0));
        assert!(!check_p4(21.0, 0.0, 21.0));
        assert!(!check_p4(15.0, 6.0, 21.0));
    }

    #[test]
    fn matches_oracle_on_fixture() {
        let fx = fixtures::eight_vertex();
        for budget in [15.0, 19.0, 21.0, 23.0, 25.0] {
            let q = fx.query(budget);
            let exact = exact_skyline(&fx.net, &q);
            let brute = brute_skyline(&fx.net, &q, OracleLimits::default()).unwrap();
            assert_eq!(exact.pairs(), brute.pairs(), "budget {budget}");
        }
    }
}
