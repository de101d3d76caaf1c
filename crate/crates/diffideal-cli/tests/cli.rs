//! End-to-end tests of the `diffideal` binary: exit codes, JSON envelopes,
//! byte stability, golden comparison, and the denominator-clearing flow.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_diffideal")
}

fn run(args: &[&str], envs: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(bin());
    cmd.args(args);
    for (k, v) in envs {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).to_string()
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).to_string()
}

fn write_problem(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn temp_dir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("diffideal-cli-test-{tag}-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

const PENCIL: &str = "\
vars: X, Y
params:
derivation:
  D X = X
  D Y = Y
";

const TANGENT: &str = "\
vars: X, Y
params:
derivation:
  D X = X
  D Y = 1 + Y^2
options:
  max_deg = 2
";

#[test]
fn apply_and_is_constant() {
    let dir = temp_dir("apply");
    let problem = write_problem(&dir, "pencil.prob", PENCIL);
    let out = run(
        &["apply", "X^2 + Y^2", "--problem", problem.to_str().unwrap(), "--json"],
        &[],
    );
    assert!(out.status.success(), "{}", stderr(&out));
    let envelope: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(envelope["results"]["derivative"], "2*X^2 + 2*Y^2");
    assert_eq!(envelope["schema_version"], "1");

    let out = run(
        &["is-constant", "X/Y", "--problem", problem.to_str().unwrap(), "--json"],
        &[],
    );
    assert!(out.status.success());
    let envelope: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(envelope["results"]["is_constant"], true);
    assert_eq!(envelope["results"]["derivative"], "0");
}

#[test]
fn json_results_are_byte_stable() {
    let dir = temp_dir("stable");
    let problem = write_problem(&dir, "tangent.prob", TANGENT);
    let args = [
        "report",
        "--problem",
        problem.to_str().unwrap(),
        "--json",
    ];
    let a: serde_json::Value = serde_json::from_str(&stdout(&run(&args, &[]))).unwrap();
    let b: serde_json::Value = serde_json::from_str(&stdout(&run(&args, &[]))).unwrap();
    // Timing may differ; the results payload must be byte-identical.
    assert_eq!(
        serde_json::to_string(&a["results"]).unwrap(),
        serde_json::to_string(&b["results"]).unwrap()
    );
    assert_eq!(a["results"]["summary"], "none found up to degree 2");
    assert_eq!(a["completeness"], "complete-for-rational-coefficients");
}

#[test]
fn diff_ideal_commands() {
    let dir = temp_dir("ideal");
    let problem = write_problem(&dir, "pencil.prob", PENCIL);
    let p = problem.to_str().unwrap();
    let out = run(&["is-diff-ideal", "X^2 + Y^2", "--problem", p, "--json"], &[]);
    let envelope: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(envelope["results"]["differential"], true);

    let out = run(&["is-diff-ideal", "X + Y^2", "--problem", p, "--json"], &[]);
    let envelope: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(envelope["results"]["differential"], false);

    // DY = X pulls X into the closure of (Y).
    let chained = write_problem(
        &dir,
        "chain.prob",
        "vars: X, Y\nderivation:\n  D X = X\n  D Y = X\n",
    );
    let out = run(
        &["diff-closure", "Y", "--problem", chained.to_str().unwrap(), "--json"],
        &[],
    );
    let envelope: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let gens: Vec<String> = envelope["results"]["closure_generators"]
        .as_array()
        .unwrap()
        .iter()
        .map(|v| v.as_str().unwrap().to_string())
        .collect();
    assert_eq!(gens, vec!["Y", "X"]);
}

#[test]
fn search_reports_and_witness() {
    let dir = temp_dir("search");
    let problem = write_problem(&dir, "tangent.prob", TANGENT);
    let p = problem.to_str().unwrap();

    let out = run(&["darboux", "--problem", p, "--json"], &[]);
    let envelope: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(envelope["completeness"], "complete-for-rational-coefficients");
    let pairs = envelope["results"]["pairs"].as_array().unwrap();
    assert_eq!(pairs.len(), 2);
    assert_eq!(pairs[0]["w"], "X");
    assert_eq!(pairs[1]["w"], "Y^2 + 1");

    let out = run(&["first-integrals", "--problem", p, "--json"], &[]);
    let envelope: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(envelope["results"]["constants"].as_array().unwrap().len(), 0);

    let out = run(&["witness", "--problem", p, "--json"], &[]);
    let envelope: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(envelope["results"]["witness"], "X^2*Y^2 + X^2");
    assert_eq!(envelope["results"]["heuristic"], false);
}

#[test]
fn family_command_and_preconditions() {
    let dir = temp_dir("family");
    let problem = write_problem(&dir, "pencil.prob", PENCIL);
    let p = problem.to_str().unwrap();
    let out = run(
        &["family", "X", "Y", "--c", "1,2,3", "--problem", p, "--json"],
        &[],
    );
    assert!(out.status.success(), "{}", stderr(&out));
    let envelope: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(envelope["results"]["all_proper"], true);
    assert_eq!(envelope["results"]["all_differential"], true);
    assert_eq!(envelope["results"]["pairwise_distinct"], true);
    assert_eq!(envelope["results"]["members"].as_array().unwrap().len(), 3);

    // X/(Y+1) is not a constant: precondition failure, exit code 2.
    let out = run(
        &["family", "X", "Y + 1", "--c", "1", "--problem", p],
        &[],
    );
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("not a constant"));

    // Duplicate samples are rejected.
    let out = run(&["family", "X", "Y", "--c", "1,1", "--problem", p], &[]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn clear_denominators_flow() {
    let dir = temp_dir("clear");
    let problem = write_problem(
        &dir,
        "rational.prob",
        "vars: X\nparams: t\nderivation:\n  D X = X / t\n  D t = t\n",
    );
    let p = problem.to_str().unwrap();
    let out = run(&["apply", "X", "--problem", p], &[]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("--clear-denominators"));

    let out = run(
        &["apply", "X", "--problem", p, "--clear-denominators", "--json"],
        &[],
    );
    assert!(out.status.success(), "{}", stderr(&out));
    let envelope: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(envelope["inputs"]["clearing_factor"], "t");
    assert_eq!(envelope["inputs"]["ring"]["derivation"]["X"], "X");
    assert_eq!(envelope["inputs"]["ring"]["derivation"]["t"], "t^2");
}

#[test]
fn parse_errors_carry_position_and_exit_2() {
    let dir = temp_dir("parse");
    let problem = write_problem(
        &dir,
        "broken.prob",
        "vars: X\nderivation:\n  D X = X + * 2\n",
    );
    let out = run(&["apply", "X", "--problem", problem.to_str().unwrap()], &[]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("line 3"));

    let missing = write_problem(&dir, "missing.prob", "vars: X, Y\nderivation:\n  D X = X\n");
    let out = run(&["apply", "X", "--problem", missing.to_str().unwrap()], &[]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("no derivation image for `Y`"));
}

#[test]
fn scenarios_match_their_goldens() {
    for name in ["paper-s1-circle", "paper-s2-family-k2", "paper-s2-family-k5"] {
        let out = run(&["scenario", name], &[]);
        assert!(
            out.status.success(),
            "scenario {name}: {}\n{}",
            stdout(&out),
            stderr(&out)
        );
    }
}

#[test]
fn scenario_golden_mismatch_exits_1_with_diff() {
    let dir = temp_dir("golden");
    std::fs::write(dir.join("paper-s1-circle.json"), "{\n  \"stale\": true\n}\n").unwrap();
    let out = run(
        &["scenario", "paper-s1-circle"],
        &[("DIFFIDEAL_GOLDEN_DIR", dir.to_str().unwrap())],
    );
    assert_eq!(out.status.code(), Some(1));
    let err = stderr(&out);
    assert!(err.contains("golden mismatch"));
    assert!(err.contains("-  \"stale\": true"), "diff lines:\n{err}");
}

#[test]
fn scenario_bless_writes_golden() {
    let dir = temp_dir("bless");
    let out = run(
        &["scenario", "paper-s2-family-k1", "--bless"],
        &[("DIFFIDEAL_GOLDEN_DIR", dir.to_str().unwrap())],
    );
    assert!(out.status.success(), "{}", stderr(&out));
    assert!(dir.join("paper-s2-family-k1.json").exists());
    // And a subsequent compare run passes.
    let out = run(
        &["scenario", "paper-s2-family-k1"],
        &[("DIFFIDEAL_GOLDEN_DIR", dir.to_str().unwrap())],
    );
    assert!(out.status.success());
}

#[test]
fn unknown_scenario_lists_available() {
    let out = run(&["scenario", "nope"], &[]);
    assert_eq!(out.status.code(), Some(2));
    let err = stderr(&out);
    assert!(err.contains("unknown scenario"));
    assert!(err.contains("paper-s1-circle"));
    assert!(err.contains("paper-s2-family-k8"));
}

#[test]
fn env_var_sets_default_degree_bound() {
    let dir = temp_dir("env");
    let problem = write_problem(&dir, "pencil.prob", PENCIL);
    let out = run(
        &["darboux", "--problem", problem.to_str().unwrap(), "--json"],
        &[("DIFFIDEAL_MAX_DEG", "1")],
    );
    let envelope: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(envelope["inputs"]["max_deg"], 1);
    assert_eq!(envelope["completeness"], "representatives-only");
}

#[test]
fn lex_order_changes_rendering() {
    let dir = temp_dir("order");
    let problem = write_problem(&dir, "pencil.prob", PENCIL);
    let p = problem.to_str().unwrap();
    let out = run(&["apply", "Y^3 + X", "--problem", p, "--json", "--order", "lex"], &[]);
    let envelope: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    // Lex puts X before Y^3; grevlex would print 3*Y^3 first.
    assert_eq!(envelope["results"]["derivative"], "X + 3*Y^3");
}
