use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_interference"))
        .args(args)
        .output()
        .unwrap()
}

fn run_out(args: &[&str], out: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_interference"))
        .args(args)
        .arg("--out")
        .arg(out)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn verify_passes_on_small_grid() {
    let o = run(&["verify", "--n-max", "8"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains(", 0 failed"));
}

#[test]
fn corrupted_projectors_are_caught() {
    let o = run(&["verify", "--n-max", "8", "--corrupt"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn order_above_n_is_rejected() {
    let o = run(&["verify", "--n", "3", "--h", "4"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("h exceeds N"));
}

#[test]
fn bad_model_order_is_rejected() {
    let o = run(&["search", "--model", "classical", "--n", "4", "--h", "2"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn grover_finds_item_in_one_step() {
    let o = run(&[
        "search",
        "--model",
        "quantum",
        "--n",
        "4",
        "--strategy",
        "grover",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("k* = 1 (success_min 1.000000000)"));
}

#[test]
fn classical_search_saturates() {
    let o = run(&["search", "--model", "classical", "--n", "8"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("saturated"));
}

#[test]
fn synthetic_search_runs() {
    let o = run(&[
        "search",
        "--model",
        "synthetic",
        "--n",
        "16",
        "--h",
        "4",
        "--strategy",
        "reflect",
        "--k-max",
        "4",
    ]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn grover_is_quantum_only() {
    let o = run(&[
        "search",
        "--model",
        "synthetic",
        "--n",
        "6",
        "--strategy",
        "grover",
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn bound_csv_has_expected_rows() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("f.csv");
    let o = run_out(&["bound", "--model", "quantum", "--n", "4"], &f);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&f).unwrap();
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("# version: "));
    assert!(lines.next().unwrap().starts_with("# config: {"));
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let col = |name: &str| header.iter().position(|h| *h == name).unwrap();
    let row: Vec<&str> = lines
        .map(|l| l.split(',').collect::<Vec<_>>())
        .find(|r| r[col("k")] == "1")
        .unwrap();
    assert!((row[col("D_k")].parse::<f64>().unwrap() - 6.0).abs() < 1e-9);
    assert_eq!(row[col("upper_4hk2")].parse::<f64>().unwrap(), 8.0);
    assert_eq!(row[col("success_min")].parse::<f64>().unwrap(), 1.0);
}

#[test]
fn bound_holds_at_n64() {
    let o = run(&["bound", "--model", "quantum", "--n", "64"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("upper PASS") && s.contains("lower PASS"));
}

#[test]
fn classical_sweep_is_saturated() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("s.json");
    let o = run_out(
        &[
            "sweep",
            "--model",
            "classical",
            "--n",
            "4,16,64",
            "--format",
            "json",
        ],
        &f,
    );
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&std::fs::read(&f).unwrap()).unwrap();
    assert_eq!(v["config"]["command"], "sweep");
    let rows = v["data"][0]["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 3);
    assert!(rows
        .iter()
        .all(|r| r["saturated"] == true && r["k_star"].is_null()));
}

#[test]
fn quantum_sweep_reports_first_success() {
    let o = run(&[
        "sweep",
        "--model",
        "quantum",
        "--n",
        "4,16,64",
        "--strategy",
        "grover",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("fitted exponent"));
}

#[test]
fn identical_runs_write_identical_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let f = dir.path().join("r.csv");
    let args = [
        "search",
        "--model",
        "quantum",
        "--n",
        "8",
        "--strategy",
        "random",
        "--seeds",
        "2",
    ];
    run_out(&args, &f);
    let a = std::fs::read(&f).unwrap();
    run_out(&args, &f);
    assert_eq!(a, std::fs::read(&f).unwrap());
}
