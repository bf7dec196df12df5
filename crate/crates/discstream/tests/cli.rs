use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_discstream"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).unwrap_or_else(|e| {
        panic!("{e}: {}\n{}", stdout(o), String::from_utf8_lossy(&o.stderr))
    })
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn generate_prints_edge_lists() {
    let o = run(&["generate", "path:4"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "4 3\n0 1\n1 2\n2 3\n");
    let o = run(&["generate", "star:4"]);
    assert_eq!(stdout(&o), "4 3\n0 1\n0 2\n0 3\n");
    let a = run(&["generate", "er:50:0.1", "--seed", "3"]);
    let b = run(&["generate", "er:50:0.1", "--seed", "3"]);
    assert_eq!(a.stdout, b.stdout);
    let o = run(&["generate", "nonsense:3"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn edge_list_round_trips_bit_exactly() {
    let dir = tempfile::tempdir().unwrap();
    let text = stdout(&run(&["generate", "er:30:0.2", "--seed", "1"]));
    let f = write(dir.path(), "g.txt", &text);
    let out = dir.path().join("h.txt");
    let o = run(&["generate", "er:30:0.2", "--seed", "1", "--out", out.to_str().unwrap()]);
    assert!(o.status.success());
    assert_eq!(std::fs::read_to_string(&out).unwrap(), text);
    // Reading the file and emitting a disc uses the same numbering.
    let o = run(&["rbfs", "--graph", &f, "--root", "0", "--q", "2", "--seed", "5"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("root 0\n"));
    assert!(stdout(&o).contains("depth 0 0\n"));
}

#[test]
fn rbfs_is_deterministic_per_seed() {
    let args = ["rbfs", "--generator", "er:40:0.15", "--root", "3", "--q", "2", "--seed", "8", "--format", "json"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.stdout, b.stdout);
    let v = json(&a);
    assert_eq!(v["result"]["disc"]["root"], 3);
    assert_eq!(v["config"]["q"], 2);
}

#[test]
fn collect_from_stream_file() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(dir.path(), "s.txt", "3 2\n1 2\n0 1\n");
    let o = run(&["collect", "--stream", &f, "--roots", "0,2", "--q", "1"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v = json(&o);
    let discs = v["result"].as_array().unwrap();
    assert_eq!(discs.len(), 2);
    assert_eq!(discs[0]["edges"], serde_json::json!([[0, 1]]));
    assert_eq!(discs[1]["edges"], serde_json::json!([[1, 2]]));
    let dup = write(dir.path(), "d.txt", "3 2\n1 2\n2 1\n");
    let o = run(&["collect", "--stream", &dup, "--roots", "0", "--q", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 3"));
}

#[test]
fn test_report_shape_and_exit_codes() {
    let o = run(&[
        "test", "--property", "pk_free:3", "--generator", "path:6", "--mode", "stream", "--trials", "100",
        "--samples", "16", "--seed", "2",
    ]);
    let v = json(&o);
    let agg = &v["result"]["aggregate"];
    let freq = agg["rejection_frequency"].as_f64().unwrap();
    assert!((0.0..=1.0).contains(&freq));
    let trials = v["result"]["trials"].as_array().unwrap();
    assert_eq!(trials.len(), 100);
    for t in trials {
        assert_eq!(t["decision"] == "reject", !t["witness"].is_null());
    }
    let expected = if agg["majority"] == "reject" { 1 } else { 0 };
    assert_eq!(o.status.code(), Some(expected));
    assert_eq!(v["config"]["property"], "pk_free:3");
    assert_eq!(v["config"]["mode"], "stream");

    let o = run(&["test", "--property", "pk_free:3", "--generator", "star:8", "--trials", "50"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["result"]["aggregate"]["rejections"], 0);

    let o = run(&["test", "--property", "d_bounded:2", "--generator", "star:8", "--model", "neighbor"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["test", "--property", "bogus", "--generator", "star:8"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn reports_are_byte_identical_across_runs_and_threads() {
    let base = [
        "test", "--property", "st_disc:0,5", "--generator", "planted:empty:12+path:3", "--mode", "query", "--trials",
        "40", "--seed", "77",
    ];
    let a = run(&base);
    let b = run(&base);
    assert_eq!(a.stdout, b.stdout);
    let mut one = base.to_vec();
    one.extend(["--threads", "1"]);
    let mut three = base.to_vec();
    three.extend(["--threads", "3"]);
    let (x, y) = (json(&run(&one)), json(&run(&three)));
    assert_eq!(x["result"], y["result"]);
}

#[test]
fn csv_summary() {
    let o = run(&["test", "--property", "pk_free:2", "--generator", "path:4", "--trials", "5", "--format", "csv"]);
    let text = stdout(&o);
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("trial,seed,"));
    assert_eq!(lines.count(), 5);
}

#[test]
fn config_file_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "c.json",
        r#"{"seed": 5, "test": {"property": "pk_free:3", "generator": "star:6", "trials": 7, "q": 2}}"#,
    );
    let o = run(&["test", "--config", &cfg, "--trials", "3"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v = json(&o);
    assert_eq!(v["config"]["trials"], 3);
    assert_eq!(v["config"]["q"], 2);
    assert_eq!(v["config"]["seed"], 5);
    assert_eq!(v["config"]["samples"], 16);

    let bad = write(dir.path(), "bad.json", r#"{"test": {"trails": 3}}"#);
    let o = run(&["test", "--config", &bad]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("trails"));
}

#[test]
fn verify_reports_named_inequalities() {
    let o = run(&["verify", "--generator", "star:50", "--q", "1", "--alpha", "0.5", "--trials", "20000"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let v = json(&o);
    let checks = v["result"]["checks"].as_array().unwrap();
    let names: Vec<&str> = checks.iter().map(|c| c["name"].as_str().unwrap()).collect();
    assert_eq!(names, ["a", "b", "c", "d", "e"]);
    for c in checks {
        assert!(c["margin"].is_number());
        assert!(c["statement"].is_string());
    }

    let o = run(&["verify", "--generator", "path:3", "--q", "1", "--check", "stream-exact"]);
    let v = json(&o);
    assert_eq!(v["result"]["support_contained"], true);
    let o = run(&["verify", "--generator", "star:4", "--q", "1", "--alpha", "0.9", "--check", "lemmas-exact"]);
    let v = json(&o);
    assert_eq!(v["result"]["v_alpha"], serde_json::json!([0]));
    assert_eq!(v["result"]["degree_floor"], "9/5");
}

#[test]
fn params_are_exact() {
    let o = run(&["params", "--q", "2", "--hq", "10"]);
    let v = json(&o);
    let r = &v["result"];
    assert_eq!(r["c_q"], "7");
    assert_eq!(r["q_2q"], "16");
    assert_eq!(r["c_prime_q"], "4369");
    assert_eq!(r["delta"], "1/2000");
    assert_eq!(r["s_min"], "400000000000000");
    let o = run(&["params", "--q", "1"]);
    let v = json(&o);
    assert_eq!(v["result"]["hq_is_bound"], true);
}

#[test]
fn oracle_and_estimate() {
    let o = run(&["oracle", "--generator", "path:3", "--root", "1", "--q", "1"]);
    let v = json(&o);
    let parts = v["result"].as_array().unwrap();
    assert_eq!(parts[0]["oracle"], "rbfs");
    let probs: Vec<&str> = parts[0]["outcomes"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x["probability"].as_str().unwrap())
        .collect();
    assert_eq!(probs, ["1/2", "1/2"]);
    assert_eq!(parts[0]["by_type"].as_array().unwrap().len(), 1);

    let o = run(&["estimate", "--generator", "path:3", "--q", "1", "--exact"]);
    let v = json(&o);
    let exact: Vec<&str> = v["result"].as_array().unwrap().iter().map(|x| x["exact"].as_str().unwrap()).collect();
    assert_eq!(exact, ["1/2", "1", "1/2"]);
}
