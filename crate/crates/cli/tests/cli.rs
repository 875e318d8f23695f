//! End-to-end tests of the `irts` binary: exit codes, output formats, file
//! handling, and the solver surface.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use irts_core::fixtures;

fn irts(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_irts"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn tmpdir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("irts-cli-{}-{tag}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    dir
}

fn write_fixture(dir: &Path) -> PathBuf {
    let path = dir.join("network.txt");
    fs::write(&path, fixtures::eight_vertex_file()).unwrap();
    path
}

fn stdout_str(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr_str(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

#[test]
fn solve_exact_on_the_example() {
    let dir = tmpdir("solve-exact");
    let net = write_fixture(&dir);
    let out = irts(&[
        "solve",
        "--network",
        net.to_str().unwrap(),
        "--source",
        "0",
        "--dest",
        "3",
        "--budget",
        "21",
        "--solver",
        "exact",
    ]);
    assert!(out.status.success(), "stderr: {}", stderr_str(&out));
    let stdout = stdout_str(&out);
    let lines: Vec<&str> = stdout.lines().collect();
    assert_eq!(lines.len(), 2);
    assert_eq!(lines[0], "4.0 19.0 5.0 0 1 2 3 6 3");
    assert_eq!(lines[1], "14.0 19.0 9.0 0 1 5 7 6 3");
}

#[test]
fn solve_budget_factor_suffix() {
    // 1.4 x preferred cost 15 = 21: same result as the absolute budget.
    let dir = tmpdir("solve-factor");
    let net = write_fixture(&dir);
    let base = [
        "solve",
        "--network",
        net.to_str().unwrap(),
        "--source",
        "0",
        "--dest",
        "3",
        "--solver",
        "exact",
    ];
    let abs = irts(&[&base[..], &["--budget", "21"]].concat());
    let fac = irts(&[&base[..], &["--budget", "1.4x"]].concat());
    assert!(fac.status.success());
    assert_eq!(stdout_str(&abs), stdout_str(&fac));
}

#[test]
fn solve_zero_budget_prints_nothing_and_succeeds() {
    let dir = tmpdir("solve-zero");
    let net = write_fixture(&dir);
    let out = irts(&[
        "solve",
        "--network",
        net.to_str().unwrap(),
        "--source",
        "0",
        "--dest",
        "3",
        "--budget",
        "0",
        "--solver",
        "doh",
    ]);
    assert!(out.status.success());
    assert!(stdout_str(&out).is_empty());
}

#[test]
fn unknown_solver_exits_2() {
    let dir = tmpdir("bad-solver");
    let net = write_fixture(&dir);
    let out = irts(&[
        "solve",
        "--network",
        net.to_str().unwrap(),
        "--source",
        "0",
        "--dest",
        "3",
        "--budget",
        "21",
        "--solver",
        "dijkstra",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr_str(&out).contains("unknown solver"));
}

#[test]
fn bad_files_exit_2_with_diagnostics() {
    let dir = tmpdir("bad-files");
    let missing = irts(&[
        "solve",
        "--network",
        dir.join("nope.txt").to_str().unwrap(),
        "--source",
        "0",
        "--dest",
        "3",
        "--budget",
        "21",
        "--solver",
        "doh",
    ]);
    assert_eq!(missing.status.code(), Some(2));
    assert!(stderr_str(&missing).contains("nope.txt"));

    let bad = dir.join("bad.txt");
    fs::write(&bad, "0 - - 0\n1 - - 0\n0 1 0\n").unwrap();
    let invalid = irts(&[
        "solve",
        "--network",
        bad.to_str().unwrap(),
        "--source",
        "0",
        "--dest",
        "1",
        "--budget",
        "21",
        "--solver",
        "doh",
    ]);
    assert_eq!(invalid.status.code(), Some(2));
    assert!(stderr_str(&invalid).contains("non-positive cost"));
}

#[test]
fn exact_refuses_long_preferred_paths_unless_forced() {
    let dir = tmpdir("exact-guard");
    let net = dir.join("long.txt");
    fs::write(&net, "0 - - 0\n1 - - 0\n0 1 1500\n").unwrap();
    let base = [
        "solve",
        "--network",
        net.to_str().unwrap(),
        "--source",
        "0",
        "--dest",
        "1",
        "--budget",
        "1600",
        "--solver",
        "exact",
    ];
    let refused = irts(&base);
    assert_eq!(refused.status.code(), Some(2));
    assert!(stderr_str(&refused).contains("--force"));

    let forced = irts(&[&base[..], &["--force"]].concat());
    assert!(forced.status.success(), "stderr: {}", stderr_str(&forced));
    assert!(stdout_str(&forced).is_empty()); // no tasks, empty skyline
}

#[test]
fn json_format_is_parseable() {
    let dir = tmpdir("json");
    let net = write_fixture(&dir);
    let out = irts(&[
        "solve",
        "--network",
        net.to_str().unwrap(),
        "--source",
        "0",
        "--dest",
        "3",
        "--budget",
        "21",
        "--solver",
        "exact",
        "--format",
        "json",
    ]);
    assert!(out.status.success());
    let stdout = stdout_str(&out);
    let points: Vec<serde_json::Value> = stdout
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(points.len(), 2);
    assert_eq!(points[0]["detour"], 4.0);
    assert_eq!(points[0]["reward"], 5.0);
    assert_eq!(points[1]["path"].as_array().unwrap().len(), 6);
}

#[test]
fn tasks_file_overrides_and_embeds() {
    let dir = tmpdir("tasks-file");
    let net = write_fixture(&dir);
    // Keep only t3 (id 6) as a task, and embed a new task into edge (0, 1).
    let tasks = dir.join("tasks.txt");
    fs::write(&tasks, "# custom tasks\n6 5.0\n0 1 2.5 7.0\n").unwrap();
    let out = irts(&[
        "solve",
        "--network",
        net.to_str().unwrap(),
        "--tasks",
        tasks.to_str().unwrap(),
        "--source",
        "0",
        "--dest",
        "3",
        "--budget",
        "21",
        "--solver",
        "exact",
    ]);
    assert!(out.status.success(), "stderr: {}", stderr_str(&out));
    let stdout = stdout_str(&out);
    // The embedded task (id 8) sits on the preferred path: detour 0, and the
    // t3 point remains at detour 4 with combined reward 12.
    assert!(stdout.lines().any(|l| l.starts_with("0.0 15.0 7.0 ")));
    assert!(stdout.lines().any(|l| l.starts_with("4.0 19.0 12.0 ")));
}

#[test]
fn trace_goes_to_stderr_only() {
    let dir = tmpdir("trace");
    let net = write_fixture(&dir);
    let base = [
        "solve",
        "--network",
        net.to_str().unwrap(),
        "--source",
        "0",
        "--dest",
        "3",
        "--budget",
        "21",
        "--solver",
        "mdh",
    ];
    let plain = irts(&base);
    let traced = irts(&[&base[..], &["--trace"]].concat());
    assert_eq!(stdout_str(&plain), stdout_str(&traced));
    assert!(stderr_str(&traced).contains("pop detour="));
    assert!(stderr_str(&plain).is_empty());
}

#[test]
fn dump_tg_prints_edge_list() {
    let dir = tmpdir("dump-tg");
    let net = write_fixture(&dir);
    let out = irts(&[
        "solve",
        "--network",
        net.to_str().unwrap(),
        "--source",
        "0",
        "--dest",
        "3",
        "--budget",
        "21",
        "--solver",
        "doh",
        "--dump-tg",
    ]);
    assert!(out.status.success());
    let dump = stderr_str(&out);
    assert!(dump.lines().any(|l| l == "0 5 2.0 7.0")); // s -> t2
    assert!(dump.lines().any(|l| l == "5 6 4.0 14.0")); // t2 -> t3
    assert!(!dump.lines().any(|l| l.starts_with("6 5 "))); // no t3 -> t2
}

#[test]
fn eval_identical_files_scores_one() {
    let dir = tmpdir("eval");
    let sky = dir.join("sky.txt");
    fs::write(
        &sky,
        "4.0 19.0 5.0 0 1 2 3 6 3\n14.0 19.0 9.0 0 1 5 7 6 3\n",
    )
    .unwrap();
    let out = irts(&[
        "eval",
        "--result",
        sky.to_str().unwrap(),
        "--baseline",
        sky.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert_eq!(stdout_str(&out), "precision 1.0 recall 1.0\n");
}

#[test]
fn eval_heuristic_against_exact_fixture() {
    let dir = tmpdir("eval2");
    let doh = dir.join("doh.txt");
    let exact = dir.join("exact.txt");
    fs::write(&doh, "4.0 19.0 5.0 0 1 2 3 6 3\n").unwrap();
    fs::write(
        &exact,
        "4.0 19.0 5.0 0 1 2 3 6 3\n14.0 19.0 9.0 0 1 5 7 6 3\n",
    )
    .unwrap();
    let out = irts(&[
        "eval",
        "--result",
        doh.to_str().unwrap(),
        "--baseline",
        exact.to_str().unwrap(),
    ]);
    assert_eq!(stdout_str(&out), "precision 1.0 recall 0.5\n");

    // Empty result: precision is absent, never defaulted.
    let empty = dir.join("empty.txt");
    fs::write(&empty, "# nothing\n").unwrap();
    let out = irts(&[
        "eval",
        "--result",
        empty.to_str().unwrap(),
        "--baseline",
        exact.to_str().unwrap(),
    ]);
    assert_eq!(stdout_str(&out), "precision - recall 0.0\n");
}

#[test]
fn gen_scenario_output_feeds_solve() {
    let dir = tmpdir("gen-solve");
    let net = dir.join("grid.txt");
    let gen = irts(&[
        "gen",
        "grid",
        "--rows",
        "10",
        "--cols",
        "10",
        "--cell",
        "10",
        "--task-frac",
        "0.4",
        "--seed",
        "7",
        "--out",
        net.to_str().unwrap(),
    ]);
    assert!(gen.status.success(), "stderr: {}", stderr_str(&gen));

    let tasks = dir.join("tasks.txt");
    let scen = irts(&[
        "gen",
        "scenario",
        "--network",
        net.to_str().unwrap(),
        "--seed",
        "3",
        "--pref-cost",
        "50",
        "--budget-factor",
        "1.5",
        "--num-tasks",
        "5",
        "--out",
        tasks.to_str().unwrap(),
    ]);
    assert!(scen.status.success(), "stderr: {}", stderr_str(&scen));
    let line = stdout_str(&scen);
    let fields: Vec<&str> = line.split_whitespace().collect();
    assert_eq!(fields[0], "source");
    let source = fields[1];
    let dest = fields[3];
    let budget = fields[5];

    let solved = irts(&[
        "solve",
        "--network",
        net.to_str().unwrap(),
        "--tasks",
        tasks.to_str().unwrap(),
        "--source",
        source,
        "--dest",
        dest,
        "--budget",
        budget,
        "--solver",
        "doh",
    ]);
    assert!(solved.status.success(), "stderr: {}", stderr_str(&solved));
    assert!(!stdout_str(&solved).is_empty());
}

#[test]
fn bench_writes_csv_records() {
    let dir = tmpdir("bench");
    let net = dir.join("grid.txt");
    irts(&[
        "gen",
        "grid",
        "--rows",
        "12",
        "--cols",
        "12",
        "--cell",
        "10",
        "--task-frac",
        "0.5",
        "--seed",
        "100",
        "--out",
        net.to_str().unwrap(),
    ]);
    let cfg = dir.join("sweep.cfg");
    fs::write(
        &cfg,
        "vary = budget_factor\nvalues = 1.25, 1.50\nrepetitions = 2\nseed = 42\n\
         solvers = doh, kgh, mdh, mrh\nbaseline = doh\npref_cost = 60\nnum_tasks = 5\n",
    )
    .unwrap();
    let csv_path = dir.join("out.csv");
    let out = irts(&[
        "bench",
        "--network",
        net.to_str().unwrap(),
        "--config",
        cfg.to_str().unwrap(),
        "--out",
        csv_path.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "stderr: {}", stderr_str(&out));
    let csv = fs::read_to_string(&csv_path).unwrap();
    let mut lines = csv.lines();
    assert_eq!(
        lines.next().unwrap(),
        "solver,seed,pref_cost,budget_factor,num_tasks,reward_dist,clusters,runtime_ms,size,precision,recall"
    );
    // 2 values x 2 reps x 4 solvers.
    assert_eq!(lines.count(), 16);
    assert!(stderr_str(&out).contains("doh: runs=4"));
}
