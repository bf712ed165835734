//! End-to-end runs of the `polyent` binary.

use std::path::Path;
use std::process::Command;

use polyent::qcore::{write_state_file, QuantumState};
use polyent::states::{w_state, StateKind, StateSpec};

fn polyent(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_polyent"))
        .args(args)
        .env("POLYENT_THREADS", "2")
        .output()
        .expect("binary runs")
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_string_lossy().into_owned()
}

const SUITE: &str = r#"
betas = [0.3, 0.8]
modes = ["hamming", "unit", "index"]
output = "out.jsonl"

[roof]
restarts = 2
max_iters = 20
step_tol = 1e-7
seed = 9

[[states]]
kind = "haar_pure"
parties = 3
dim = 2
samples = 3
seed = 5
"#;

#[test]
fn random_suite_writes_jsonl() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "suite.toml", &SUITE.replace("out.jsonl", &dir.path().join("out.jsonl").to_string_lossy()));
    let out = polyent(&["random-suite", "--config", &cfg]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let text = std::fs::read_to_string(dir.path().join("out.jsonl")).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 1 + 3 * 2 * 3);
    let meta: serde_json::Value = serde_json::from_str(lines[0]).unwrap();
    assert_eq!(meta["metadata"]["command"], "random-suite");
    assert_eq!(meta["metadata"]["config"]["roof"]["restarts"], 2);
    assert_eq!(meta["metadata"]["seed"], 9);
    for l in &lines[1..] {
        let r: serde_json::Value = serde_json::from_str(l).unwrap();
        for key in ["beta", "mode", "lhs", "terms", "rhs", "slack", "holds", "ordering", "condition_met", "estimates_are_lower_bounds"] {
            assert!(r.get(key).is_some(), "missing {key}");
        }
    }
}

#[test]
fn sweep_beta_csv_has_fixed_columns() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("sweep.csv");
    let cfg = format!(
        r#"
        format = "csv"
        output = "{}"
        [roof]
        restarts = 4
        [[states]]
        kind = "w"
        parties = 3
        dim = 2
        "#,
        out_path.display()
    );
    let cfg = write(dir.path(), "sweep.toml", &cfg);
    let out = polyent(&["sweep-beta", "--config", &cfg]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let mut rdr = csv::Reader::from_path(&out_path).unwrap();
    let header: Vec<String> = rdr.headers().unwrap().iter().map(String::from).collect();
    assert_eq!(header, ["beta", "mode", "lhs", "rhs", "slack", "holds", "condition_met", "seed"]);
    let rows: Vec<csv::StringRecord> = rdr.records().map(|r| r.unwrap()).collect();
    assert_eq!(rows.len(), 21 * 3);
    assert!(rows.iter().all(|r| &r[5] == "true"));
    // β = 0: both W marginals have nonzero assisted entanglement
    let zero_unit = rows.iter().find(|r| &r[0] == "0" && &r[1] == "unit").unwrap();
    assert_eq!(&zero_unit[2], "1");
    assert!((zero_unit[3].parse::<f64>().unwrap() - 2.0).abs() < 1e-12);
}

#[test]
fn check_reads_a_state_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("w.json");
    write_state_file(&path, &QuantumState::Pure(w_state(3).unwrap())).unwrap();
    let out = polyent(&[
        "check", "--state", path.to_str().unwrap(), "--focus", "A", "--beta", "0.5", "--mode", "hamming",
    ]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let table = String::from_utf8(out.stdout).unwrap();
    assert!(table.contains("0.266467"), "{table}");
}

#[test]
fn reproduce_paper_exits_zero() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("rp.jsonl");
    let out = polyent(&["reproduce-paper", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.contains("slack beta=1 unit"));
    assert!(!stdout.contains("FAIL"));
    assert_eq!(std::fs::read_to_string(&path).unwrap().lines().count(), 6);
}

#[test]
fn config_errors_exit_three() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.toml", "betas = [2.0]\n[[states]]\nkind = \"w\"\nparties = 3\ndim = 2\n");
    assert_eq!(polyent(&["random-suite", "--config", &bad]).status.code(), Some(3));
    let missing = dir.path().join("nope.toml");
    assert_eq!(polyent(&["sweep-beta", "--config", missing.to_str().unwrap()]).status.code(), Some(3));
    let mixed = toml::to_string(&serde_json::json!({
        "states": [StateSpec::new(StateKind::RandomMixed, 3, 2).with_rank(2)]
    }))
    .unwrap();
    let mixed = write(dir.path(), "mixed.toml", &mixed);
    assert_eq!(polyent(&["random-suite", "--config", &mixed]).status.code(), Some(3));
    let threads = Command::new(env!("CARGO_BIN_EXE_polyent"))
        .args(["reproduce-paper"])
        .env("POLYENT_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(threads.status.code(), Some(3));
}
