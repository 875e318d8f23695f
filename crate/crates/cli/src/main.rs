//! `irts` — skyline route search on road networks.
//!
//! Subcommands: `solve` (one query, skyline on stdout), `gen grid` /
//! `gen scenario` (synthetic inputs), `bench` (parameter sweep to CSV),
//! `eval` (precision/recall of one skyline file against another).

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use irts_bench::grid::{grid_network, GridConfig};
use irts_bench::scenario::{gen_scenario, RewardDist, ScenarioConfig};
use irts_bench::sweep::{run_sweep, summarize_by_solver, to_csv, SweepSpec};
use irts_core::network::{PreferredPath, RoadNetwork, VertexId};
use irts_core::query::Query;
use irts_core::skyline::parse_plain;
use irts_core::solvers::{solve, SolveOptions, SolverKind};

/// The exact solver is refused above this preferred-path cost unless forced;
/// its runtime explodes well before city-scale inputs.
const EXACT_PREF_COST_LIMIT: f64 = 1000.0;

#[derive(Parser)]
#[command(
    name = "irts",
    version,
    about = "Skyline route search trading detour cost against task rewards"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve one query and print its skyline, one point per line
    Solve(SolveArgs),
    /// Generate synthetic inputs
    #[command(subcommand)]
    Gen(GenCommand),
    /// Run a parameter sweep and emit one CSV record per (scenario, solver)
    Bench(BenchArgs),
    /// Score a skyline file against a baseline skyline file
    Eval(EvalArgs),
}

#[derive(Args)]
struct SolveArgs {
    /// Network file (`id x y reward` vertex lines, `u v cost` edge lines)
    #[arg(long)]
    network: PathBuf,
    /// Tasks file (`id reward` lines, or `u v offset reward` to embed into an
    /// edge); defaults to the network's own rewarded vertices
    #[arg(long)]
    tasks: Option<PathBuf>,
    #[arg(long)]
    source: VertexId,
    #[arg(long)]
    dest: VertexId,
    /// Absolute budget (`21`) or preferred-path factor (`1.25x`)
    #[arg(long)]
    budget: String,
    /// One of: exact, doh, kgh, mdh, mrh, oracle
    #[arg(long)]
    solver: String,
    /// Neighbor cap for kgh (only valid with --solver kgh; default 5)
    #[arg(long)]
    k: Option<usize>,
    /// Output format: plain or json
    #[arg(long, default_value = "plain")]
    format: String,
    /// Print per-step search events to stderr
    #[arg(long)]
    trace: bool,
    /// Print the task graph's edge list (`from to detour travel`) to stderr
    /// before solving (graph solvers only)
    #[arg(long)]
    dump_tg: bool,
    /// Run the exact solver even on long preferred paths
    #[arg(long)]
    force: bool,
}

#[derive(Subcommand)]
enum GenCommand {
    /// Write a jittered grid network with candidate task vertices
    Grid(GenGridArgs),
    /// Draw a scenario on a network and write its tasks file
    Scenario(GenScenarioArgs),
}

#[derive(Args)]
struct GenGridArgs {
    #[arg(long, default_value_t = 20)]
    rows: usize,
    #[arg(long, default_value_t = 20)]
    cols: usize,
    /// Nominal edge length; costs are jittered within [0.8, 1.2] of it
    #[arg(long, default_value_t = 50.0)]
    cell: f64,
    /// Fraction of vertices marked as candidate tasks
    #[arg(long, default_value_t = 0.03)]
    task_frac: f64,
    #[arg(long)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct GenScenarioArgs {
    #[arg(long)]
    network: PathBuf,
    #[arg(long)]
    seed: u64,
    /// Target preferred-path cost (accepted within 20%)
    #[arg(long, default_value_t = 2500.0)]
    pref_cost: f64,
    #[arg(long, default_value_t = 1.25)]
    budget_factor: f64,
    #[arg(long, default_value_t = 20)]
    num_tasks: usize,
    /// equal, uniform or exponential
    #[arg(long, default_value = "uniform")]
    reward_dist: String,
    #[arg(long)]
    clusters: Option<usize>,
    /// Tasks file to write; query parameters go to stdout
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long)]
    network: PathBuf,
    /// Sweep spec as a flat key=value file
    #[arg(long)]
    config: PathBuf,
    /// CSV output file (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
    /// Blank the wall-clock column for byte-reproducible output
    #[arg(long)]
    zero_runtime: bool,
}

#[derive(Args)]
struct EvalArgs {
    #[arg(long)]
    result: PathBuf,
    #[arg(long)]
    baseline: PathBuf,
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("irts: {err:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Solve(args) => cmd_solve(args),
        Command::Gen(GenCommand::Grid(args)) => cmd_gen_grid(args),
        Command::Gen(GenCommand::Scenario(args)) => cmd_gen_scenario(args),
        Command::Bench(args) => cmd_bench(args),
        Command::Eval(args) => cmd_eval(args),
    }
}

fn load_network(path: &Path) -> Result<RoadNetwork> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("cannot read network file {}", path.display()))?;
    RoadNetwork::parse(&text).with_context(|| format!("invalid network file {}", path.display()))
}

/// Tasks file: `id reward` marks an existing vertex as a task; `u v offset
/// reward` embeds a new task vertex into edge (u, v) at `offset` from `u`.
fn load_tasks(path: &Path, net: &mut RoadNetwork) -> Result<BTreeMap<VertexId, f64>> {
    let text = fs::read_to_string(path)
        .with_context(|| format!("cannot read tasks file {}", path.display()))?;
    let mut tasks = BTreeMap::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let data = raw.split('#').next().unwrap_or("");
        let fields: Vec<&str> = data.split_whitespace().collect();
        let ctx = || {
            format!(
                "tasks file {} line {line}: `{}`",
                path.display(),
                raw.trim()
            )
        };
        match fields.len() {
            0 => {}
            2 => {
                let id: VertexId = fields[0].parse().with_context(ctx)?;
                let reward: f64 = fields[1].parse().with_context(ctx)?;
                if !net.contains(id) {
                    bail!("{}: unknown vertex {id}", ctx());
                }
                if tasks.insert(id, reward).is_some() {
                    bail!("{}: duplicate task {id}", ctx());
                }
            }
            4 => {
                let u: VertexId = fields[0].parse().with_context(ctx)?;
                let v: VertexId = fields[1].parse().with_context(ctx)?;
                let offset: f64 = fields[2].parse().with_context(ctx)?;
                let reward: f64 = fields[3].parse().with_context(ctx)?;
                let t = net.embed_task(u, v, offset, reward).with_context(ctx)?;
                tasks.insert(t, reward);
            }
            _ => bail!("{}: expected 2 or 4 fields", ctx()),
        }
    }
    Ok(tasks)
}

fn parse_budget(raw: &str, pref: &PreferredPath) -> Result<f64> {
    let raw = raw.trim();
    let budget = if let Some(factor) = raw.strip_suffix('x') {
        let factor: f64 = factor
            .parse()
            .with_context(|| format!("invalid budget factor `{raw}`"))?;
        factor * pref.total_cost()
    } else {
        raw.parse()
            .with_context(|| format!("invalid budget `{raw}`"))?
    };
    if !budget.is_finite() || budget < 0.0 {
        bail!("budget must be non-negative, got `{raw}`");
    }
    Ok(budget)
}

fn cmd_solve(args: SolveArgs) -> Result<()> {
    let mut net = load_network(&args.network)?;
    let tasks = match &args.tasks {
        Some(path) => load_tasks(path, &mut net)?,
        None => net.task_ids().iter().map(|&t| (t, net.reward(t))).collect(),
    };

    let kind: SolverKind = args.solver.parse()?;
    if args.k.is_some() && kind != SolverKind::Kgh {
        bail!("--k only applies to the kgh solver");
    }

    let (path, _) = net
        .shortest_travel_path(args.source, args.dest)
        .context("no preferred path between source and destination")?;
    let pref = PreferredPath::new(&net, path).expect("shortest path is valid");
    if kind == SolverKind::Exact && pref.total_cost() > EXACT_PREF_COST_LIMIT && !args.force {
        bail!(
            "preferred path costs {:.1}, beyond the exact solver's practical limit of {}; \
             use a heuristic solver or pass --force",
            pref.total_cost(),
            EXACT_PREF_COST_LIMIT
        );
    }
    let budget = parse_budget(&args.budget, &pref)?;
    let query = Query::new(&net, pref, tasks, budget)?;

    if args.dump_tg {
        match kind {
            SolverKind::Doh | SolverKind::Kgh | SolverKind::Mdh | SolverKind::Mrh => {
                eprint!(
                    "{}",
                    irts_core::taskgraph::TaskGraph::build(&net, &query).dump()
                );
            }
            _ => bail!("--dump-tg only applies to the task-graph solvers"),
        }
    }
    let opts = SolveOptions {
        k: args.k.unwrap_or(5),
        record: args.trace,
        ..SolveOptions::default()
    };
    let (skyline, stats) = solve(&net, &query, kind, opts)?;
    if args.trace {
        for line in &stats.trace {
            eprintln!("{line}");
        }
    }
    match args.format.as_str() {
        "plain" => {
            for p in skyline.points() {
                println!("{}", p.to_plain_line());
            }
        }
        "json" => {
            for p in skyline.points() {
                println!("{}", serde_json::to_string(p)?);
            }
        }
        other => bail!("unknown output format `{other}` (expected plain or json)"),
    }
    Ok(())
}

fn cmd_gen_grid(args: GenGridArgs) -> Result<()> {
    let net = grid_network(&GridConfig {
        rows: args.rows,
        cols: args.cols,
        cell: args.cell,
        task_fraction: args.task_frac,
        seed: args.seed,
    });
    fs::write(&args.out, net.to_file_string())
        .with_context(|| format!("cannot write {}", args.out.display()))?;
    eprintln!(
        "wrote {} ({} vertices, {} edges, {} candidate tasks)",
        args.out.display(),
        net.vertex_count(),
        net.edge_count(),
        net.task_ids().len()
    );
    Ok(())
}

fn cmd_gen_scenario(args: GenScenarioArgs) -> Result<()> {
    let net = load_network(&args.network)?;
    let cfg = ScenarioConfig {
        pref_cost_target: args.pref_cost,
        budget_factor: args.budget_factor,
        num_tasks: args.num_tasks,
        reward_dist: args.reward_dist.parse::<RewardDist>()?,
        clusters: args.clusters,
        seed: args.seed,
    };
    let scenario = gen_scenario(&net, &cfg)?;

    let mut out = format!(
        "# scenario seed={} source={} dest={} budget={:?} pref_cost={:?}\n",
        args.seed,
        scenario.source,
        scenario.dest,
        scenario.budget,
        scenario.pref.total_cost()
    );
    for (&t, &r) in &scenario.tasks {
        out.push_str(&format!("{t} {r:?}\n"));
    }
    fs::write(&args.out, out).with_context(|| format!("cannot write {}", args.out.display()))?;
    println!(
        "source {} dest {} budget {:?} tasks {}",
        scenario.source,
        scenario.dest,
        scenario.budget,
        scenario.tasks.len()
    );
    Ok(())
}

fn cmd_bench(args: BenchArgs) -> Result<()> {
    let net = load_network(&args.network)?;
    let text = fs::read_to_string(&args.config)
        .with_context(|| format!("cannot read sweep config {}", args.config.display()))?;
    let spec = SweepSpec::parse(&text)?;
    let outcome = run_sweep(&net, &spec);

    let csv = to_csv(&outcome.records, args.zero_runtime);
    match &args.out {
        Some(path) => {
            fs::write(path, csv).with_context(|| format!("cannot write {}", path.display()))?
        }
        None => print!("{csv}"),
    }

    match spec.baseline {
        Some(SolverKind::Exact) | Some(SolverKind::Oracle) => {}
        Some(kind) => eprintln!(
            "baseline {kind} is itself a heuristic: precision/recall below are optimistic upper bounds"
        ),
        None => {}
    }
    for s in summarize_by_solver(&outcome.records) {
        let fmt = |v: Option<f64>| v.map_or("-".to_string(), |x| format!("{x:.3}"));
        eprintln!(
            "{}: runs={} mean_runtime_ms={:.3} mean_size={:.2} mean_precision={} mean_recall={}",
            s.solver,
            s.runs,
            s.mean_runtime_ms,
            s.mean_size,
            fmt(s.mean_precision),
            fmt(s.mean_recall)
        );
    }
    if !outcome.skipped.is_empty() {
        eprintln!("skipped {} scenario cells:", outcome.skipped.len());
        for (seed, reason) in &outcome.skipped {
            eprintln!("  seed {seed}: {reason}");
        }
    }
    Ok(())
}

fn cmd_eval(args: EvalArgs) -> Result<()> {
    let load = |path: &Path| -> Result<_> {
        let text = fs::read_to_string(path)
            .with_context(|| format!("cannot read skyline file {}", path.display()))?;
        parse_plain(&text).with_context(|| format!("invalid skyline file {}", path.display()))
    };
    let result = load(&args.result)?;
    let baseline = load(&args.baseline)?;
    let ev = irts_bench::evaluate(&result, &baseline);
    let fmt = |v: Option<f64>| v.map_or("-".to_string(), |x| format!("{x:?}"));
    println!("precision {} recall {}", fmt(ev.precision), fmt(ev.recall));
    Ok(())
}
