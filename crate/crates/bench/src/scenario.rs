//! Reproducible query scenarios over a loaded network: a shortest-path
//! preferred route near a target length, a budget as a factor of its cost,
//! and a task subset drawn from the feasible candidates with rewards from a
//! chosen distribution.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use irts_core::network::{PreferredPath, RoadNetwork, VertexId};
use irts_core::num::approx_le;

use crate::rng::Rng;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RewardDist {
    /// Every task pays 1.
    Equal,
    /// Uniform integers in 1..=20.
    Uniform,
    /// Exponential with rate 1, rounded to cents and shifted by +0.01 so the
    /// rounded value stays strictly positive.
    Exponential,
}

impl RewardDist {
    pub fn name(&self) -> &'static str {
        match self {
            RewardDist::Equal => "equal",
            RewardDist::Uniform => "uniform",
            RewardDist::Exponential => "exponential",
        }
    }

    pub fn sample(&self, rng: &mut Rng) -> f64 {
        match self {
            RewardDist::Equal => 1.0,
            RewardDist::Uniform => rng.uniform_int(1, 20) as f64,
            RewardDist::Exponential => (rng.exp(1.0) * 100.0).round() / 100.0 + 0.01,
        }
    }
}

impl fmt::Display for RewardDist {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Error)]
#[error("unknown reward distribution `{0}` (expected equal, uniform or exponential)")]
pub struct UnknownRewardDist(String);

impl FromStr for RewardDist {
    type Err = UnknownRewardDist;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "equal" => Ok(RewardDist::Equal),
            "uniform" => Ok(RewardDist::Uniform),
            "exponential" => Ok(RewardDist::Exponential),
            other => Err(UnknownRewardDist(other.to_string())),
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct ScenarioConfig {
    /// Desired preferred-path cost; accepted within ±20%.
    pub pref_cost_target: f64,
    /// Budget as a multiple of the preferred-path cost.
    pub budget_factor: f64,
    pub num_tasks: usize,
    pub reward_dist: RewardDist,
    /// When set, tasks are drawn as `c` clusters: random centroids plus their
    /// nearest feasible neighbors by network travel distance.
    pub clusters: Option<usize>,
    pub seed: u64,
}

impl Default for ScenarioConfig {
    fn default() -> Self {
        ScenarioConfig {
            pref_cost_target: 2500.0,
            budget_factor: 1.25,
            num_tasks: 20,
            reward_dist: RewardDist::Uniform,
            clusters: None,
            seed: 0,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Scenario {
    pub source: VertexId,
    pub dest: VertexId,
    pub pref: PreferredPath,
    pub tasks: BTreeMap<VertexId, f64>,
    pub budget: f64,
}

#[derive(Debug, Error)]
pub enum ScenarioError {
    #[error("no source/destination pair with a path near cost {target} found in {attempts} draws")]
    NoPathNearTarget { target: f64, attempts: usize },
    #[error("no candidate task is feasible within budget {budget}")]
    EmptyFeasiblePool { budget: f64 },
}

const MAX_DRAWS: usize = 1000;

/// Generates a scenario on `net`. Candidate tasks are the network's task
/// vertices; the feasible pool keeps those whose shortest-travel visit
/// (source → task → destination) fits the budget. When the pool is smaller
/// than `num_tasks`, all of it is used.
pub fn gen_scenario(net: &RoadNetwork, cfg: &ScenarioConfig) -> Result<Scenario, ScenarioError> {
    let mut rng = Rng::new(cfg.seed);
    let ids: Vec<VertexId> = net.vertex_ids().collect();

    let mut found = None;
    for _ in 0..MAX_DRAWS {
        let s = ids[rng.gen_range(ids.len())];
        let d = ids[rng.gen_range(ids.len())];
        if s == d {
            continue;
        }
        if let Ok((path, cost)) = net.shortest_travel_path(s, d) {
            if (cost - cfg.pref_cost_target).abs() <= 0.2 * cfg.pref_cost_target {
                found = Some((s, d, path, cost));
                break;
            }
        }
    }
    let Some((source, dest, path, pref_cost)) = found else {
        return Err(ScenarioError::NoPathNearTarget {
            target: cfg.pref_cost_target,
            attempts: MAX_DRAWS,
        });
    };
    let pref = PreferredPath::new(net, path).expect("shortest path is a valid path");
    let budget = cfg.budget_factor * pref_cost;

    let from_s = net.travel_costs_from(source).expect("source exists");
    let from_d = net.travel_costs_from(dest).expect("destination exists");
    let pool: Vec<VertexId> = net
        .task_ids()
        .iter()
        .copied()
        .filter(|&t| t != source && t != dest)
        .filter(|&t| match (from_s[t], from_d[t]) {
            (Some(a), Some(b)) => approx_le(a + b, budget),
            _ => false,
        })
        .collect();
    if pool.is_empty() {
        return Err(ScenarioError::EmptyFeasiblePool { budget });
    }

    let selected = match cfg.clusters {
        Some(c) if c >= 1 => clustered_selection(net, &pool, cfg.num_tasks, c, &mut rng),
        _ => {
            let mut shuffled = pool.clone();
            rng.shuffle(&mut shuffled);
            shuffled.truncate(cfg.num_tasks);
            shuffled
        }
    };

    let mut tasks = BTreeMap::new();
    for v in selected {
        tasks.insert(v, cfg.reward_dist.sample(&mut rng));
    }

    Ok(Scenario {
        source,
        dest,
        pref,
        tasks,
        budget,
    })
}

/// Picks `c` random centroids from the pool, then fills each cluster with its
/// nearest not-yet-selected feasible neighbors (network travel distance)
/// until the total reaches `num_tasks` or the pool runs out.
fn clustered_selection(
    net: &RoadNetwork,
    pool: &[VertexId],
    num_tasks: usize,
    c: usize,
    rng: &mut Rng,
) -> Vec<VertexId> {
    let c = c.min(pool.len()).min(num_tasks.max(1));
    let mut shuffled = pool.to_vec();
    rng.shuffle(&mut shuffled);
    let centroids: Vec<VertexId> = shuffled.iter().copied().take(c).collect();

    let mut selected: Vec<VertexId> = centroids.clone();
    for (i, &centroid) in centroids.iter().enumerate() {
        // Spread the remainder over the first clusters.
        let quota = num_tasks / c + usize::from(i < num_tasks % c);
        let dist = net.travel_costs_from(centroid).expect("centroid exists");
        let mut neighbors: Vec<VertexId> = pool
            .iter()
            .copied()
            .filter(|v| !selected.contains(v))
            .collect();
        neighbors.sort_by(|&a, &b| {
            let da = dist[a].unwrap_or(f64::INFINITY);
            let db = dist[b].unwrap_or(f64::INFINITY);
            da.total_cmp(&db).then(a.cmp(&b))
        });
        selected.extend(neighbors.into_iter().take(quota.saturating_sub(1)));
        if selected.len() >= num_tasks.min(pool.len()) {
            break;
        }
    }
    selected.truncate(num_tasks);
    selected
}
