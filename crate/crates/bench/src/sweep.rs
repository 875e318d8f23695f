//! Parameter sweeps: run a set of solvers over seeded scenarios, one
//! parameter varying and the rest at their defaults, scoring each solver
//! against a baseline and emitting one CSV record per (scenario, solver).

use std::fmt::Write as _;
use std::str::FromStr;
use std::time::Instant;

use thiserror::Error;

use irts_core::network::RoadNetwork;
use irts_core::query::Query;
use irts_core::skyline::SkylineSet;
use irts_core::solvers::{solve, SolveOptions, SolverKind};

use crate::evaluate::evaluate;
use crate::rng::seed_for;
use crate::scenario::{gen_scenario, RewardDist, ScenarioConfig};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SweepParam {
    None,
    PrefCost,
    BudgetFactor,
    NumTasks,
    RewardDist,
    Clusters,
}

impl SweepParam {
    fn name(&self) -> &'static str {
        match self {
            SweepParam::None => "none",
            SweepParam::PrefCost => "pref_cost",
            SweepParam::BudgetFactor => "budget_factor",
            SweepParam::NumTasks => "num_tasks",
            SweepParam::RewardDist => "reward_dist",
            SweepParam::Clusters => "clusters",
        }
    }
}

impl FromStr for SweepParam {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "none" => Ok(SweepParam::None),
            "pref_cost" => Ok(SweepParam::PrefCost),
            "budget_factor" => Ok(SweepParam::BudgetFactor),
            "num_tasks" => Ok(SweepParam::NumTasks),
            "reward_dist" => Ok(SweepParam::RewardDist),
            "clusters" => Ok(SweepParam::Clusters),
            other => Err(format!("unknown sweep parameter `{other}`")),
        }
    }
}

#[derive(Clone, Debug)]
pub struct SweepSpec {
    pub vary: SweepParam,
    pub values: Vec<String>,
    pub repetitions: usize,
    pub seed: u64,
    pub solvers: Vec<SolverKind>,
    pub baseline: Option<SolverKind>,
    pub k: usize,
    pub defaults: ScenarioConfig,
}

impl Default for SweepSpec {
    fn default() -> Self {
        SweepSpec {
            vary: SweepParam::None,
            values: Vec::new(),
            repetitions: 1,
            seed: 0,
            solvers: vec![
                SolverKind::Doh,
                SolverKind::Kgh,
                SolverKind::Mdh,
                SolverKind::Mrh,
            ],
            baseline: Some(SolverKind::Doh),
            k: 5,
            defaults: ScenarioConfig::default(),
        }
    }
}

#[derive(Debug, Error)]
pub enum SweepError {
    #[error("sweep config line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("value `{value}` is invalid for {param}: {msg}")]
    BadValue {
        param: &'static str,
        value: String,
        msg: String,
    },
}

impl SweepSpec {
    /// Parses the flat `key = value` config format (`#` comments allowed).
    ///
    /// Keys: `vary`, `values` (comma-separated), `repetitions`, `seed`,
    /// `solvers` (comma-separated), `baseline` (solver name or `none`), `k`,
    /// and the scenario defaults `pref_cost`, `budget_factor`, `num_tasks`,
    /// `reward_dist`, `clusters` (empty for unclustered).
    pub fn parse(text: &str) -> Result<SweepSpec, SweepError> {
        let mut spec = SweepSpec::default();
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let data = raw.split('#').next().unwrap_or("").trim();
            if data.is_empty() {
                continue;
            }
            let err = |msg: String| SweepError::Parse { line, msg };
            let (key, value) = data
                .split_once('=')
                .ok_or_else(|| err(format!("expected `key = value`, got `{data}`")))?;
            let (key, value) = (key.trim(), value.trim());
            match key {
                "vary" => spec.vary = value.parse().map_err(err)?,
                "values" => {
                    spec.values = value
                        .split(',')
                        .map(|v| v.trim().to_string())
                        .filter(|v| !v.is_empty())
                        .collect()
                }
                "repetitions" => {
                    spec.repetitions = value
                        .parse()
                        .map_err(|_| err(format!("bad repetition count `{value}`")))?
                }
                "seed" => {
                    spec.seed = value
                        .parse()
                        .map_err(|_| err(format!("bad seed `{value}`")))?
                }
                "solvers" => {
                    spec.solvers = value
                        .split(',')
                        .map(|v| v.trim().parse::<SolverKind>())
                        .collect::<Result<_, _>>()
                        .map_err(|e| err(e.to_string()))?
                }
                "baseline" => {
                    spec.baseline =
                        match value {
                            "none" | "" => None,
                            name => Some(name.parse().map_err(
                                |e: irts_core::solvers::UnknownSolver| err(e.to_string()),
                            )?),
                        }
                }
                "k" => spec.k = value.parse().map_err(|_| err(format!("bad k `{value}`")))?,
                "pref_cost" => {
                    spec.defaults.pref_cost_target = value
                        .parse()
                        .map_err(|_| err(format!("bad pref_cost `{value}`")))?
                }
                "budget_factor" => {
                    spec.defaults.budget_factor = value
                        .parse()
                        .map_err(|_| err(format!("bad budget_factor `{value}`")))?
                }
                "num_tasks" => {
                    spec.defaults.num_tasks = value
                        .parse()
                        .map_err(|_| err(format!("bad num_tasks `{value}`")))?
                }
                "reward_dist" => {
                    spec.defaults.reward_dist = value
                        .parse()
                        .map_err(|e: crate::scenario::UnknownRewardDist| err(e.to_string()))?
                }
                "clusters" => {
                    spec.defaults.clusters = if value.is_empty() {
                        None
                    } else {
                        Some(
                            value
                                .parse()
                                .map_err(|_| err(format!("bad cluster count `{value}`")))?,
                        )
                    }
                }
                other => return Err(err(format!("unknown key `{other}`"))),
            }
        }
        // Validate every sweep value against the varied parameter up front.
        for value in &spec.values {
            apply_value(&mut spec.defaults.clone(), spec.vary, value)?;
        }
        if spec.vary != SweepParam::None && spec.values.is_empty() {
            return Err(SweepError::Parse {
                line: 0,
                msg: format!("vary = {} requires a values list", spec.vary.name()),
            });
        }
        Ok(spec)
    }
}

fn apply_value(cfg: &mut ScenarioConfig, vary: SweepParam, value: &str) -> Result<(), SweepError> {
    let bad = |param: &'static str, msg: String| SweepError::BadValue {
        param,
        value: value.to_string(),
        msg,
    };
    match vary {
        SweepParam::None => {}
        SweepParam::PrefCost => {
            cfg.pref_cost_target = value
                .parse()
                .map_err(|_| bad("pref_cost", "expected a number".into()))?
        }
        SweepParam::BudgetFactor => {
            cfg.budget_factor = value
                .parse()
                .map_err(|_| bad("budget_factor", "expected a number".into()))?
        }
        SweepParam::NumTasks => {
            cfg.num_tasks = value
                .parse()
                .map_err(|_| bad("num_tasks", "expected an integer".into()))?
        }
        SweepParam::RewardDist => {
            cfg.reward_dist = value
                .parse::<RewardDist>()
                .map_err(|e| bad("reward_dist", e.to_string()))?
        }
        SweepParam::Clusters => {
            cfg.clusters = Some(
                value
                    .parse()
                    .map_err(|_| bad("clusters", "expected an integer".into()))?,
            )
        }
    }
    Ok(())
}

/// One (scenario, solver) measurement.
#[derive(Clone, Debug)]
pub struct EvalRecord {
    pub solver: String,
    pub seed: u64,
    pub pref_cost: f64,
    pub budget_factor: f64,
    pub num_tasks: usize,
    pub reward_dist: String,
    pub clusters: Option<usize>,
    pub runtime_ms: f64,
    pub size: usize,
    pub precision: Option<f64>,
    pub recall: Option<f64>,
}

#[derive(Debug, Default)]
pub struct SweepOutcome {
    pub records: Vec<EvalRecord>,
    /// Cells that produced no record: (derived seed, reason).
    pub skipped: Vec<(u64, String)>,
}

/// Runs the sweep. Scenario failures are recorded in `skipped` and do not
/// abort the run; record order is deterministic (values, then repetitions,
/// then solvers).
pub fn run_sweep(net: &RoadNetwork, spec: &SweepSpec) -> SweepOutcome {
    let mut outcome = SweepOutcome::default();
    let cells: Vec<Option<&String>> = if spec.vary == SweepParam::None {
        vec![None]
    } else {
        spec.values.iter().map(Some).collect()
    };

    for (lane, cell) in cells.iter().enumerate() {
        let mut cfg = spec.defaults;
        if let Some(value) = cell {
            apply_value(&mut cfg, spec.vary, value).expect("values validated at parse time");
        }
        for rep in 0..spec.repetitions {
            cfg.seed = seed_for(spec.seed, lane as u64, rep as u64);
            let scenario = match gen_scenario(net, &cfg) {
                Ok(s) => s,
                Err(e) => {
                    outcome.skipped.push((cfg.seed, e.to_string()));
                    continue;
                }
            };
            let query = Query::new(
                net,
                scenario.pref.clone(),
                scenario.tasks.clone(),
                scenario.budget,
            )
            .expect("generated scenarios are valid queries");

            let opts = SolveOptions {
                k: spec.k,
                ..SolveOptions::default()
            };
            let baseline = match spec.baseline {
                Some(kind) => match timed_solve(net, &query, kind, opts) {
                    Ok(r) => Some((kind, r)),
                    Err(e) => {
                        outcome
                            .skipped
                            .push((cfg.seed, format!("baseline {kind}: {e}")));
                        continue;
                    }
                },
                None => None,
            };

            for &kind in &spec.solvers {
                let (skyline, runtime_ms) = match &baseline {
                    Some((bk, r)) if *bk == kind => r.clone(),
                    _ => match timed_solve(net, &query, kind, opts) {
                        Ok(r) => r,
                        Err(e) => {
                            outcome
                                .skipped
                                .push((cfg.seed, format!("solver {kind}: {e}")));
                            continue;
                        }
                    },
                };
                let eval = baseline
                    .as_ref()
                    .map(|(_, (b, _))| evaluate(skyline.points(), b.points()));
                outcome.records.push(EvalRecord {
                    solver: kind.name().to_string(),
                    seed: cfg.seed,
                    pref_cost: cfg.pref_cost_target,
                    budget_factor: cfg.budget_factor,
                    num_tasks: cfg.num_tasks,
                    reward_dist: cfg.reward_dist.name().to_string(),
                    clusters: cfg.clusters,
                    runtime_ms,
                    size: skyline.len(),
                    precision: eval.and_then(|e| e.precision),
                    recall: eval.and_then(|e| e.recall),
                });
            }
        }
    }
    outcome
}

fn timed_solve(
    net: &RoadNetwork,
    query: &Query,
    kind: SolverKind,
    opts: SolveOptions,
) -> Result<(SkylineSet, f64), irts_core::solvers::SolveError> {
    let start = Instant::now();
    let (skyline, _) = solve(net, query, kind, opts)?;
    Ok((skyline, start.elapsed().as_secs_f64() * 1000.0))
}

pub const CSV_HEADER: &str =
    "solver,seed,pref_cost,budget_factor,num_tasks,reward_dist,clusters,runtime_ms,size,precision,recall";

/// Renders records as CSV under the fixed header. `zero_runtime` blanks the
/// one wall-clock column so equal seeds give byte-identical files.
pub fn to_csv(records: &[EvalRecord], zero_runtime: bool) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in records {
        let runtime = if zero_runtime { 0.0 } else { r.runtime_ms };
        let _ = writeln!(
            out,
            "{},{},{:?},{:?},{},{},{},{:.3},{},{},{}",
            r.solver,
            r.seed,
            r.pref_cost,
            r.budget_factor,
            r.num_tasks,
            r.reward_dist,
            r.clusters.map(|c| c.to_string()).unwrap_or_default(),
            runtime,
            r.size,
            r.precision.map(|p| format!("{p:?}")).unwrap_or_default(),
            r.recall.map(|p| format!("{p:?}")).unwrap_or_default(),
        );
    }
    out
}

/// Per-solver means across all records, in first-appearance order. Precision
/// and recall are averaged over the records where they are present.
#[derive(Clone, Debug)]
pub struct SolverSummary {
    pub solver: String,
    pub runs: usize,
    pub mean_runtime_ms: f64,
    pub mean_size: f64,
    pub mean_precision: Option<f64>,
    pub mean_recall: Option<f64>,
}

pub fn summarize_by_solver(records: &[EvalRecord]) -> Vec<SolverSummary> {
    let mut order: Vec<&str> = Vec::new();
    for r in records {
        if !order.contains(&r.solver.as_str()) {
            order.push(&r.solver);
        }
    }
    order
        .into_iter()
        .map(|name| {
            let rows: Vec<&EvalRecord> = records.iter().filter(|r| r.solver == name).collect();
            let mean = |f: &dyn Fn(&EvalRecord) -> f64| {
                rows.iter().map(|r| f(r)).sum::<f64>() / rows.len() as f64
            };
            let mean_opt = |f: &dyn Fn(&EvalRecord) -> Option<f64>| {
                let vals: Vec<f64> = rows.iter().filter_map(|r| f(r)).collect();
                if vals.is_empty() {
                    None
                } else {
                    Some(vals.iter().sum::<f64>() / vals.len() as f64)
                }
            };
            SolverSummary {
                solver: name.to_string(),
                runs: rows.len(),
                mean_runtime_ms: mean(&|r| r.runtime_ms),
                mean_size: mean(&|r| r.size as f64),
                mean_precision: mean_opt(&|r| r.precision),
                mean_recall: mean_opt(&|r| r.recall),
            }
        })
        .collect()
}
