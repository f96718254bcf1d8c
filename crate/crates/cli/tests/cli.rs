use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_threeweight")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

const G62: &str = "1 0 0 1 2 2\n0 1 0 2 1 2\n0 0 1 3 3 1\n";

#[test]
fn weights_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let m = write(dir.path(), "g_6_2.txt", G62);
    let out = run(&["weights", "--ring", "z4", "--matrix", &m]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let wd = &v["verdicts"]["weight_distribution"];
    assert_eq!((wd["4"].as_u64(), wd["6"].as_u64(), wd["8"].as_u64()), (Some(18), Some(24), Some(21)));
    assert_eq!(v["command"], "weights");
    assert_eq!(v["input_hashes"][&m].as_str().unwrap().len(), 64);
}

#[test]
fn csv_output() {
    let out = run(&["--csv", "weights", "--matrix", "builtin:G6_2"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text, "weight,frequency\n0,1\n4,18\n6,24\n8,21\n");
}

#[test]
fn swrg_and_ssum_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let m = write(dir.path(), "g.txt", G62);
    let out = run(&["swrg", "--ring", "z4", "--matrix", &m, "--s", "3", "--b", "0"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["verdicts"]["holds"], true);
    // {±e1, ±e2} generates the 4x4 torus, which is not 3-strongly walk-regular
    let id = write(dir.path(), "id.txt", "1 0\n0 1\n");
    assert_eq!(run(&["ssum", "--matrix", &id, "--s", "3"]).status.code(), Some(2));
    assert_eq!(run(&["swrg", "--matrix", &id, "--s", "3"]).status.code(), Some(2));
    assert_eq!(run(&["spectrum", "--matrix", &m]).status.code(), Some(0));
}

#[test]
fn feasible_example() {
    let out = run(&["feasible", "--n", "4", "--sum-exactly", "12"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["verdicts"]["count"], 6);
}

#[test]
fn classify_statuses() {
    let realized = run(&["classify", "--ring", "z4", "--n", "6", "--shape", "2,1", "--weights", "4,6,8"]);
    assert_eq!(realized.status.code(), Some(0));
    let empty = run(&["classify", "--ring", "z4", "--n", "4", "--shape", "2,0", "--weights", "2,4,6"]);
    assert_eq!(empty.status.code(), Some(2));
    let f2u = run(&["classify", "--ring", "f2u", "--n", "8", "--shape", "2,1", "--weights", "6,8,10"]);
    assert_eq!(f2u.status.code(), Some(2));
    let undecided =
        run(&["classify", "--n", "6", "--shape", "3,0", "--weights", "4,6,8", "--mode", "exhaust", "--budget-nodes", "3"]);
    assert_eq!(undecided.status.code(), Some(3));
    let infeasible = run(&["classify", "--n", "5", "--shape", "2,1", "--weights", "2,3,4"]);
    assert_eq!(infeasible.status.code(), Some(1));
}

#[test]
fn classify_checkpoint_resumes() {
    let dir = tempfile::tempdir().unwrap();
    let ck = dir.path().join("run.jsonl");
    let ck = ck.to_str().unwrap();
    let args = ["classify", "--n", "6", "--shape", "3,0", "--weights", "4,6,8", "--mode", "exhaust", "--out", ck];
    let partial: Vec<&str> = args.iter().copied().chain(["--budget-nodes", "40"]).collect();
    assert_eq!(run(&partial).status.code(), Some(3));
    let lines_before = std::fs::read_to_string(ck).unwrap().lines().count();
    let full = run(&args);
    assert_eq!(full.status.code(), Some(0));
    let text = std::fs::read_to_string(ck).unwrap();
    let subtrees: Vec<u64> = text
        .lines()
        .filter_map(|l| serde_json::from_str::<Value>(l).ok())
        .filter_map(|v| v.get("subtree").map(|s| s["index"].as_u64().unwrap()))
        .collect();
    let mut unique = subtrees.clone();
    unique.sort();
    unique.dedup();
    // no subtree is recorded twice across the two runs
    assert_eq!(unique.len(), subtrees.len());
    assert!(text.lines().count() > lines_before);
    let fresh = run(&args[..args.len() - 2]);
    let strip = |v: Value| v["verdicts"]["record"]["witnesses"].clone();
    assert_eq!(strip(json(&full)), strip(json(&fresh)));
    // a checkpoint from another search is refused
    let other = ["classify", "--n", "6", "--shape", "2,1", "--weights", "4,6,8", "--out", ck];
    assert_eq!(run(&other).status.code(), Some(1));
}

#[test]
fn reproduce_tables() {
    let out = run(&["reproduce-table", "--table", "T1", "--n-max", "8"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["verdicts"]["passed"], true);
    let dir = tempfile::tempdir().unwrap();
    let dest = dir.path().join("t4.json");
    let out = run(&["reproduce-table", "--table", "T4", "--n-max", "6", "--out", dest.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(dest).unwrap()).unwrap();
    assert_eq!(v["verdicts"]["report"]["mismatches"], 0);
}

#[test]
fn kerdock_generator_round_trips() {
    let out = run(&["kerdock", "--s", "3", "--walk", "3", "--b", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let gen = v["verdicts"]["generator"].as_str().unwrap().to_string();
    let dir = tempfile::tempdir().unwrap();
    let m = write(dir.path(), "k3.txt", &gen);
    let w = json(&run(&["weights", "--matrix", &m]));
    let wd = &w["verdicts"]["weight_distribution"];
    assert_eq!((wd["6"].as_u64(), wd["8"].as_u64(), wd["10"].as_u64()), (Some(42), Some(7), Some(14)));
    let dual = json(&run(&["dual", "--matrix", &m]));
    let dual_text = dual["verdicts"]["generator"].as_str().unwrap().to_string();
    let d = write(dir.path(), "k3dual.txt", &dual_text);
    assert_eq!(run(&["weights", "--matrix", &d]).status.code(), Some(0));
}

#[test]
fn family_commands() {
    assert_eq!(run(&["macwilliams", "--ring", "f2u", "--matrix", "builtin:T5_3"]).status.code(), Some(0));
    let t = json(&run(&["teichmuller", "--all"]));
    assert_eq!(t["verdicts"]["all_hold"], true);
    let one = json(&run(&["teichmuller", "--q", "2", "--k", "3", "--s", "0"]));
    assert_eq!(one["verdicts"]["parameters"][0]["A"], serde_json::json!([42, 7, 14]));
    // the trace code's column set is not a 3-sum set
    let tr = run(&["trace", "--p", "3", "--m", "2"]);
    assert_eq!(tr.status.code(), Some(2));
    assert_eq!(json(&tr)["verdicts"]["length"], 36);
    let ex = run(&["scan-exceptional", "--n-max", "50"]);
    assert_eq!(ex.status.code(), Some(0));
    assert_eq!(json(&ex)["verdicts"]["matches_published"], true);
    let g = json(&run(&["graph", "--matrix", "builtin:G6_2", "--b", "0"]));
    assert_eq!(g["verdicts"]["header"]["vertices"], 64);
}

#[test]
fn usage_errors() {
    assert_eq!(run(&[]).status.code(), Some(1));
    assert_eq!(run(&["weights"]).status.code(), Some(1));
    assert_eq!(run(&["weights", "--ring", "z9x", "--matrix", "builtin:G6_2"]).status.code(), Some(1));
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.txt", "1 0 7\n0 1\n");
    assert_eq!(run(&["weights", "--matrix", &bad]).status.code(), Some(1));
    assert_eq!(run(&["weights", "--matrix", "/nonexistent/file"]).status.code(), Some(1));
    assert_eq!(run(&["classify", "--ring", "gr4:3", "--n", "6", "--shape", "2,1", "--weights", "4,6,8"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}
