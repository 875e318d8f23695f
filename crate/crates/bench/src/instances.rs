//! Small random instances sized for the brute-force oracle, used by the
//! correctness test suites.

use std::collections::BTreeMap;

use irts_core::network::{PreferredPath, RoadNetwork};
use irts_core::query::Query;

use crate::grid::{grid_network, GridConfig};
use crate::rng::Rng;

/// A random grid instance with at most 12 vertices and at most 4 tasks.
/// The budget is `budget_factor` times the preferred-path cost; rewards are
/// uniform integers in 1..=20.
pub fn random_small_instance(seed: u64, budget_factor: f64) -> (RoadNetwork, Query) {
    let mut rng = Rng::new(seed);
    let rows = 2 + rng.gen_range(2); // 2..=3
    let cols = 2 + rng.gen_range(3); // 2..=4
    let net = grid_network(&GridConfig {
        rows,
        cols,
        cell: 5.0,
        task_fraction: 0.0,
        seed: rng.next_u64(),
    });
    let n = rows * cols;
    let s = rng.gen_range(n);
    let mut d = rng.gen_range(n);
    if d == s {
        d = (d + 1) % n;
    }
    let (path, cost) = net.shortest_travel_path(s, d).unwrap();
    let pref = PreferredPath::new(&net, path).unwrap();

    let mut candidates: Vec<usize> = (0..n).filter(|&v| v != s && v != d).collect();
    rng.shuffle(&mut candidates);
    let num_tasks = 1 + rng.gen_range(4); // 1..=4
    let mut tasks = BTreeMap::new();
    for &v in candidates.iter().take(num_tasks) {
        tasks.insert(v, rng.uniform_int(1, 20) as f64);
    }

    let query = Query::new(&net, pref, tasks, budget_factor * cost).unwrap();
    (net, query)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn instances_fit_oracle_limits() {
        for seed in 0..20 {
            let (net, query) = random_small_instance(seed, 1.5);
            assert!(net.vertex_count() <= 12);
            assert!((1..=4).contains(&query.tasks().len()));
            assert!(query.budget() > 0.0);
            assert_ne!(query.source(), query.dest());
        }
    }

    #[test]
    fn same_seed_same_instance() {
        let (a, qa) = random_small_instance(9, 1.5);
        let (b, qb) = random_small_instance(9, 1.5);
        assert_eq!(a.to_file_string(), b.to_file_string());
        assert_eq!(qa.tasks(), qb.tasks());
        assert_eq!(qa.budget(), qb.budget());
    }
}
