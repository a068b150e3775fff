//! End-to-end tests of the `sekwl` binary: flag surface, exit codes,
//! and byte determinism across reruns and thread counts.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_sekwl"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout_of(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "command {args:?} failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn tmpdir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("sekwl-cli-{tag}-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn write_graph(dir: &Path, name: &str, spec: &str) -> String {
    let path = dir.join(name);
    let out = run(&["generate", spec, "-o", path.to_str().unwrap()]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    path.to_str().unwrap().to_string()
}

#[test]
fn generate_is_byte_deterministic() {
    let a = stdout_of(&["generate", "random_regular:n=10,r=3,seed=1"]);
    let b = stdout_of(&["generate", "random_regular:n=10,r=3,seed=1"]);
    assert_eq!(a, b);
    assert_eq!(a.lines().count(), 15, "3-regular on 10 nodes has 15 edges");
}

#[test]
fn generate_g6_decodes_to_the_expected_shape() {
    let dir = tmpdir("gen");
    let rook = write_graph(&dir, "rook.g6", "rook4x4");
    let counts = stdout_of(&["count", &rook, "--method", "both"]);
    let v: serde_json::Value = serde_json::from_str(&counts).unwrap();
    assert_eq!(v["agree"], serde_json::json!(true));
    assert_eq!(v["closed_form"]["triangles"], serde_json::json!(32));
}

#[test]
fn bad_generator_spec_exits_2_with_the_grammar() {
    let out = run(&["generate", "moebius:n=5"]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("grammar"), "{err}");
}

#[test]
fn unreadable_graph_exits_1() {
    let out = run(&["count", "/nonexistent/g.el"]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("/nonexistent/g.el"), "{err}");
}

#[test]
fn unknown_flag_is_an_error() {
    let out = run(&["generate", "rook4x4", "--frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn cycle_edge_list_has_six_lines() {
    let el = stdout_of(&["generate", "cycle:n=6"]);
    assert_eq!(el.lines().count(), 6);
}

#[test]
fn discriminate_reports_the_strongly_regular_separation() {
    let dir = tmpdir("disc");
    let rook = write_graph(&dir, "rook.g6", "rook4x4");
    let shri = write_graph(&dir, "shri.g6", "shrikhande");
    let json = stdout_of(&[
        "discriminate",
        &rook,
        &shri,
        "--suite",
        "wl1,khop:K=2,sek:K=2,l=6",
    ]);
    let v: serde_json::Value = serde_json::from_str(&json).unwrap();
    let verdicts = v["verdicts"].as_array().unwrap();
    assert_eq!(verdicts[0]["distinguished"], serde_json::json!(false));
    assert_eq!(verdicts[1]["distinguished"], serde_json::json!(false));
    assert_eq!(verdicts[2]["distinguished"], serde_json::json!(true));
}

#[test]
fn intersection_array_prints_the_known_value() {
    let dir = tmpdir("ia");
    let rook = write_graph(&dir, "rook.g6", "rook4x4");
    assert_eq!(stdout_of(&["intersection-array", &rook]).trim(), "{6,3;1,2}");
    let path4 = write_graph(&dir, "p4.el", "path:n=4");
    assert_eq!(
        stdout_of(&["intersection-array", &path4]).trim(),
        "not distance-regular"
    );
}

#[test]
fn encode_produces_the_contracted_header_and_sidecar() {
    let dir = tmpdir("enc");
    let c3 = write_graph(&dir, "c3.el", "cycle:n=3");
    let csv_path = dir.join("feats.csv");
    let out = run(&[
        "encode", &c3, "-K", "1", "-l", "2", "-o", csv_path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let csv = std::fs::read_to_string(&csv_path).unwrap();
    let mut lines = csv.lines();
    let header = lines.next().unwrap();
    assert_eq!(header.split(',').count(), 1 + 2 + 2 * 2);
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 3);
    let strip = |row: &str| row.split_once(',').unwrap().1.to_string();
    assert_eq!(strip(rows[0]), strip(rows[1]), "triangle rows are identical");
    assert_eq!(strip(rows[0]), strip(rows[2]));
    let sidecar: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir.join("feats.csv.json")).unwrap())
            .unwrap();
    assert_eq!(sidecar["hops"], serde_json::json!(1));
    assert_eq!(sidecar["steps"], serde_json::json!(2));
    assert_eq!(sidecar["format_version"], serde_json::json!("1"));
}

#[test]
fn encode_rerun_is_byte_identical_and_thread_independent() {
    let dir = tmpdir("det");
    let g = write_graph(&dir, "er.el", "erdos_renyi:n=14,p=0.3,seed=9");
    let a = stdout_of(&["encode", &g, "-K", "2", "-l", "4"]);
    let b = stdout_of(&["encode", &g, "-K", "2", "-l", "4"]);
    let c = stdout_of(&["--threads", "1", "encode", &g, "-K", "2", "-l", "4"]);
    let d = stdout_of(&["--threads", "4", "encode", &g, "-K", "2", "-l", "4"]);
    assert_eq!(a, b);
    assert_eq!(a, c);
    assert_eq!(a, d);
}

#[test]
fn refine_trace_is_deterministic_json() {
    let dir = tmpdir("ref");
    let g = write_graph(&dir, "star.el", "star:n=5");
    let a = stdout_of(&["refine", &g, "--algorithm", "wl1", "-T", "5"]);
    let b = stdout_of(&["--threads", "2", "refine", &g, "--algorithm", "wl1", "-T", "5"]);
    assert_eq!(a, b);
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["algorithm"], serde_json::json!("wl1"));
    assert_eq!(v["stable_at"], serde_json::json!(1));
    // star(5): 1 class initially, then {center | leaves}
    assert_eq!(v["partition_sizes"][0], serde_json::json!([5]));
    assert_eq!(v["partition_sizes"][1], serde_json::json!([4, 1]));
}

#[test]
fn walk_separation_emits_jsonl_and_a_summary() {
    let dir = tmpdir("sep");
    let jsonl = dir.join("trials.jsonl");
    let summary = stdout_of(&[
        "--seed", "7",
        "walk-separation",
        "-n", "100",
        "-r", "3",
        "--trials", "10",
        "-o", jsonl.to_str().unwrap(),
    ]);
    assert!(summary.contains("hop bound K=6"));
    assert!(summary.contains("rate"));
    let lines: Vec<String> = std::fs::read_to_string(&jsonl)
        .unwrap()
        .lines()
        .map(String::from)
        .collect();
    assert_eq!(lines.len(), 10);
    for line in &lines {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(v["k_bound"], serde_json::json!(6));
    }
    // rerun with the same seed is byte-identical
    let again = stdout_of(&[
        "--seed", "7",
        "walk-separation",
        "-n", "100",
        "-r", "3",
        "--trials", "10",
    ]);
    assert_eq!(summary, again);
    // infeasible regime is a domain error -> exit 1
    let out = run(&["walk-separation", "-n", "100", "-r", "4", "--trials", "1"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn duplicate_and_self_loop_warnings_go_to_stderr() {
    let dir = tmpdir("warn");
    let path = dir.join("dirty.el");
    std::fs::write(&path, "0 1\n0 1\n2 2\n1 2\n").unwrap();
    let out = run(&["count", path.to_str().unwrap(), "--method", "closed-form"]);
    assert!(out.status.success());
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("1 duplicate edge(s)"), "{err}");
    assert!(err.contains("1 self-loop(s)"), "{err}");
}
