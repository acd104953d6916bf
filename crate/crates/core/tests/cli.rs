use std::path::Path;
use std::process::{Command, Output};

fn run(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_anomalous-flow"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn read(path: &Path) -> String {
    std::fs::read_to_string(path).unwrap()
}

#[test]
fn toy_writes_table_and_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let out = run(dir.path(), &["--scenario", "toy"]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let csv = read(&dir.path().join("toy.csv"));
    let mut lines = csv.lines();
    assert_eq!(
        lines.next().unwrap(),
        "dE_A,sigma_A_00,sigma_A_11,sigma_B_00,sigma_B_11,catalyst_residual,energy_residual"
    );
    let row: Vec<f64> = lines
        .next()
        .unwrap()
        .split(',')
        .map(|x| x.parse().unwrap())
        .collect();
    for (got, want) in row.iter().zip([-0.25, 0.75, 0.25, 0.25, 0.75]) {
        assert!((got - want).abs() <= 1e-12);
    }
    let manifest: serde_json::Value =
        serde_json::from_str(&read(&dir.path().join("toy.csv.manifest.json"))).unwrap();
    assert_eq!(manifest["schema_version"], 1);
    assert_eq!(manifest["config"]["scenario"], "toy");
    assert!(manifest["wall_time_seconds"].as_f64().unwrap() >= 0.0);
    assert!(manifest["residuals"]["catalyst_residual"].as_f64().unwrap() <= 1e-12);
}

#[test]
fn single_point_sweep_has_exact_header() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.json");
    std::fs::write(
        &cfg,
        r#"{"scenario": "sweep", "lambdas": [0.5], "thetas": [0.0], "tau_points": 40}"#,
    )
    .unwrap();
    let out = run(
        dir.path(),
        &["--config", cfg.to_str().unwrap(), "--out", "s.csv"],
    );
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let csv = read(&dir.path().join("s.csv"));
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(
        lines[0],
        "lambda,theta,dE_star,dE_cat,tau_star,advantage,catalyst_residual,energy_residual,bound"
    );
    assert_eq!(lines.len(), 2);
    let row: Vec<f64> = lines[1].split(',').map(|x| x.parse().unwrap()).collect();
    assert!(row[2].abs() < 1e-10);
    assert!(row[3] < -1e-2);
    assert!(row[8] <= row[3] + 1e-7);
}

#[test]
fn flags_override_config_and_json_output_parses() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.json");
    std::fs::write(
        &cfg,
        r#"{"scenario": "bound", "lambda": 0.9, "theta": 0.9}"#,
    )
    .unwrap();
    let out = run(
        dir.path(),
        &[
            "--config",
            cfg.to_str().unwrap(),
            "--lambda",
            "0.5",
            "--theta",
            "0.25",
            "--format",
            "json",
        ],
    );
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let rows: serde_json::Value =
        serde_json::from_str(&read(&dir.path().join("bound.json"))).unwrap();
    assert_eq!(rows[0]["lambda"], 0.5);
    assert_eq!(rows[0]["converged"], true);
}

#[test]
fn sweep_output_is_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let args = |out: &'static str, threads: &'static str| {
        [
            "--scenario",
            "sweep",
            "--grid",
            "4",
            "--tau-points",
            "30",
            "--threads",
            threads,
            "--out",
            out,
        ]
    };
    assert!(run(dir.path(), &args("a.csv", "1")).status.success());
    assert!(run(dir.path(), &args("b.csv", "3")).status.success());
    assert_eq!(
        read(&dir.path().join("a.csv")),
        read(&dir.path().join("b.csv"))
    );
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(
        run(dir.path(), &["--scenario", "toy", "--epsilon", "nan"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(
        run(
            dir.path(),
            &["--scenario", "optimal", "--lambda", "0.9", "--theta", "0.9"]
        )
        .status
        .code(),
        Some(1)
    );
    assert_eq!(
        run(dir.path(), &["--config", "missing.json"]).status.code(),
        Some(1)
    );
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, r#"{"scenario": "toy", "unknown_key": 3}"#).unwrap();
    assert_eq!(
        run(dir.path(), &["--config", bad.to_str().unwrap()])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn verify_passes_and_detects_injected_fault() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("v.json");
    std::fs::write(
        &cfg,
        r#"{"scenario": "verify", "verify": {"dephasing_trials": 50, "exchange_trials": 60,
            "optimality_states": 3, "optimality_samples": 100, "hierarchy_states": 10,
            "sweep_grid": 3, "sweep_tau_points": 20}}"#,
    )
    .unwrap();
    let c = cfg.to_str().unwrap();
    let ok = run(dir.path(), &["--config", c, "--out", "ok.csv"]);
    assert_eq!(
        ok.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&ok.stderr)
    );
    let bad = run(
        dir.path(),
        &["--config", c, "--out", "bad.csv", "--inject-fault"],
    );
    assert_eq!(bad.status.code(), Some(3));
    let table = read(&dir.path().join("bad.csv"));
    assert!(table
        .lines()
        .any(|l| l.starts_with("block_dephasing_invariance,") && l.ends_with(",false")));
}
