//! End-to-end CLI tests: stable formats, exit codes, reproducibility
//! metadata.

use std::process::{Command, Output};

fn polyhedra(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_polyhedra"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn arrow_min_recovers_ramsey_number() {
    let out = polyhedra(&[
        "arrow-min", "--class", "set", "--a-size", "2", "--b-size", "3", "--colors", "2",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["result"]["n"], 6);
    assert_eq!(v["meta"]["command"], "arrow-min");
    assert!(v["meta"]["version"].is_string());
    assert!(v["meta"]["guards"]["node_budget"].is_number());
}

#[test]
fn enumerate_three_vertices() {
    let out = polyhedra(&["enumerate", "--n", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["result"]["count"], 9);
    assert_eq!(v["result"]["complexes"].as_array().unwrap().len(), 9);
}

#[test]
fn approx_zero_is_empty() {
    let out = polyhedra(&["approx", "--oracle", "full-simplex", "--n", "0"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["result"]["vertices"].as_array().unwrap().len(), 0);
}

#[test]
fn restrict_canonicalize_round_trips_through_both_formats() {
    // text in, plain text out
    let out = polyhedra(&[
        "restrict",
        "--complex",
        "V: 0 2 5 7 | F: 0,2 2,5 7",
        "--keep",
        "2,5,7",
        "--canonicalize",
        "--plain",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let line = String::from_utf8(out.stdout).unwrap();
    assert_eq!(line.trim(), "V: 0 1 2 | F: 2 0,1");

    // the same result through the JSON format
    let out = polyhedra(&[
        "restrict",
        "--complex",
        "V: 0 2 5 7 | F: 0,2 2,5 7",
        "--keep",
        "2,5,7",
        "--canonicalize",
    ]);
    let v = stdout_json(&out);
    let json_text = serde_json::to_string(&v["result"]).unwrap();
    let reparsed = polyhedra(&["restrict", "--complex", &json_text, "--keep", "0,1,2", "--plain"]);
    assert_eq!(
        String::from_utf8(reparsed.stdout).unwrap().trim(),
        "V: 0 1 2 | F: 2 0,1"
    );
}

#[test]
fn failing_arrow_exits_one() {
    let out = polyhedra(&[
        "arrow",
        "--a", "V: 0 1 | F: 0 1",
        "--b", "V: 0 1 2 | F: 0 1 2",
        "--c", "V: 0 1 2 3 4 | F: 0 1 2 3 4",
        "--colors", "2",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let v = stdout_json(&out);
    assert_eq!(v["result"]["holds"], false);
    assert!(v["result"]["counterexample"].is_array());
}

#[test]
fn usage_errors_exit_two() {
    let out = polyhedra(&["arrow", "--a", "V: 0 | F: 0"]);
    assert_eq!(out.status.code(), Some(2)); // clap: missing required flags
    let out = polyhedra(&["depth", "--complex", "not a complex", "--oracle", "pure-set"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn resource_limit_exits_three() {
    let out = polyhedra(&[
        "arrow",
        "--a", "V: 0 1 | F: 0 1",
        "--b", "V: 0 1 2 | F: 0 1 2",
        "--c", "V: 0 1 2 3 4 5 | F: 0 1 2 3 4 5",
        "--colors", "2",
        "--node-budget", "2",
    ]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn depth_exit_codes() {
    let ok = polyhedra(&["depth", "--complex", "V: 2 5 | F: 2 5", "--oracle", "pure-set"]);
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(stdout_json(&ok)["result"]["depth"], 6);

    // family not dominated: definitively undefined
    let undef = polyhedra(&["depth", "--complex", "V: 1 3 | F: 1,3", "--oracle", "pure-set"]);
    assert_eq!(undef.status.code(), Some(1));

    // vertex beyond the horizon: unknown
    let limited = polyhedra(&[
        "depth", "--complex", "V: 900 | F: 900", "--oracle", "pure-set", "--horizon", "10",
    ]);
    assert_eq!(limited.status.code(), Some(3));
    assert_eq!(stdout_json(&limited)["result"]["horizon_limited"], true);
}

#[test]
fn export_cnf_emits_dimacs() {
    let out = polyhedra(&[
        "export-cnf",
        "--a", "V: 0 1 | F: 0 1",
        "--b", "V: 0 1 2 | F: 0 1 2",
        "--c", "V: 0 1 2 3 4 | F: 0 1 2 3 4",
        "--colors", "2",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().any(|l| l.starts_with("p cnf 20 ")));
    assert!(text.lines().next().unwrap().starts_with("c "));
}

#[test]
fn random_is_reproducible_across_runs() {
    let a = polyhedra(&["random", "--n", "6", "--p", "0.5", "--seed", "11", "--plain"]);
    let b = polyhedra(&["random", "--n", "6", "--p", "0.5", "--seed", "11", "--plain"]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(a.status.code(), Some(0));
}

#[test]
fn axioms_subcommand_passes_small_classes() {
    let out = polyhedra(&["axioms", "--k", "2", "--n-max", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["result"]["passed"], true);
}

#[test]
fn fraisse_build_reports_chain() {
    let out = polyhedra(&["fraisse-build", "--k", "1", "--steps", "10", "--seed", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["result"]["steps_done"], 10);
    assert_eq!(v["result"]["snapshots"].as_array().unwrap().len(), 11);
    assert_eq!(v["meta"]["seed"], 3);
}

#[test]
fn space_ramsey_min_pure_sets() {
    let out = polyhedra(&[
        "space-ramsey-min", "--oracle", "pure-set", "--k", "1", "--n", "2", "--colors", "2",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["result"]["m"], 3);
}

#[test]
fn pigeonhole_monochromatic_output() {
    let out = polyhedra(&[
        "pigeonhole",
        "--a", "V: 0 | F: 0",
        "--oracle", "pure-set",
        "--coloring", "parity",
        "--step-horizon", "21",
        "--plain",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let line = String::from_utf8(out.stdout).unwrap();
    let vertices: Vec<u32> = line
        .trim()
        .strip_prefix("V:")
        .unwrap()
        .split('|')
        .next()
        .unwrap()
        .split_whitespace()
        .map(|t| t.parse().unwrap())
        .collect();
    // beyond the prefix {0}, all extension vertices share one parity
    let parities: Vec<u32> = vertices.iter().skip(1).map(|v| v % 2).collect();
    assert!(!parities.is_empty());
    assert!(parities.windows(2).all(|w| w[0] == w[1]));
}

#[test]
fn ext_check_scope_flag() {
    let out = polyhedra(&[
        "ext-check",
        "--complex", "V: 0 1 2 | F: 0,1 1,2",
        "--k", "2",
        "--s", "1",
    ]);
    assert_eq!(out.status.code(), Some(1)); // finite complex fails somewhere
    let v = stdout_json(&out);
    assert!(v["result"]["checked"].as_u64().unwrap() > 0);

    let ultra = polyhedra(&[
        "ext-check",
        "--complex", "V: 0 1 2 | F: 0,1 1,2",
        "--k", "2",
        "--s", "2",
        "--ultra",
    ]);
    assert_eq!(ultra.status.code(), Some(1)); // the path graph is not homogeneous
}

#[test]
fn coverage_report_shape() {
    let out = polyhedra(&[
        "coverage", "--n", "6", "--p", "0.5", "--k", "2", "--seed", "5", "--s", "2",
        "--samples", "20",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["result"]["samples"], 20);
    assert!(v["result"]["targets"].as_array().unwrap().len() >= 3);
}

#[test]
fn out_flag_writes_file() {
    let dir = std::env::temp_dir().join("polyhedra-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("enumerate.json");
    let path_str = path.to_str().unwrap();
    let out = polyhedra(&["enumerate", "--n", "2", "--out", path_str]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let body: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(body["result"]["count"], 2);
    std::fs::remove_file(path).ok();
}
