use std::fs;

use photonwork::cli::run;
use photonwork::io::{read_sweep_csv, read_trace_csv};

fn run_in(dir: &std::path::Path, args: &[&str]) -> i32 {
    let mut v = vec!["photonwork"];
    v.extend_from_slice(args);
    v.extend_from_slice(&["--out", dir.to_str().unwrap()]);
    run(v)
}

#[test]
fn trace_output_parses_back() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(run_in(dir.path(), &["trace", "--delta-lw", "2", "--detuning", "-1", "--grid-points", "300"]), 0);
    let tr = read_trace_csv(fs::File::open(dir.path().join("trace.csv")).unwrap()).unwrap();
    assert_eq!(tr.len(), 300);
    assert!(tr.pe.iter().all(|p| (0.0..=1.0).contains(p)));
    assert!(dir.path().join("detector.csv").exists());
    assert!(dir.path().join("config.json").exists());
}

#[test]
fn sweep_is_deterministic() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    let args = ["sweep", "--linewidths", "0.1,2", "--detunings", "-2,-1,0,1,2", "--check"];
    assert_eq!(run_in(a.path(), &args), 0);
    let mut one = args.to_vec();
    one.extend_from_slice(&["--jobs", "1"]);
    assert_eq!(run_in(b.path(), &one), 0);
    let x = fs::read(a.path().join("sweep.csv")).unwrap();
    let y = fs::read(b.path().join("sweep.csv")).unwrap();
    assert_eq!(x, y);
    let rows = read_sweep_csv(x.as_slice()).unwrap();
    assert_eq!(rows.len(), 10);
}

#[test]
fn config_file_is_overridden_by_flags() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("scenario.json");
    fs::write(&cfg, r#"{"delta_lw": 3.0, "detuning": 2.0, "grid_points": 64}"#).unwrap();
    let out = dir.path().join("out");
    let code = run([
        "photonwork", "trace", "--config", cfg.to_str().unwrap(), "--detuning", "-0.5",
        "--out", out.to_str().unwrap(),
    ]);
    assert_eq!(code, 0);
    let resolved: serde_json::Value = serde_json::from_slice(&fs::read(out.join("config.json")).unwrap()).unwrap();
    assert_eq!(resolved["delta_lw"], 3.0);
    assert_eq!(resolved["detuning"], -0.5);
    assert_eq!(resolved["grid_points"], 64);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(run_in(dir.path(), &["trace", "--delta-lw", "-1"]), 1);
    assert_eq!(run_in(dir.path(), &["trace", "--x-d", "0.5"]), 1);
    assert_eq!(run_in(dir.path(), &["sweep", "--tol", "0"]), 1);
    assert_eq!(run_in(dir.path(), &["trace", "--config", "/nonexistent/scenario.json"]), 3);
    let bad = dir.path().join("bad.json");
    fs::write(&bad, r#"{"delta": 1.0}"#).unwrap();
    assert_eq!(run_in(dir.path(), &["trace", "--config", bad.to_str().unwrap()]), 1);
    let junk = dir.path().join("junk.ckpt");
    fs::write(&junk, b"not a checkpoint").unwrap();
    assert_eq!(run_in(dir.path(), &["lattice", "--resume", junk.to_str().unwrap()]), 3);
}

#[test]
fn spectrum_writes_peaks() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(run_in(dir.path(), &["spectrum", "--delta-lw", "10", "--grid-points", "2048"]), 0);
    let peaks = fs::read_to_string(dir.path().join("peaks.csv")).unwrap();
    assert!(peaks.starts_with("t_center,peak_freq\n"));
    assert!(peaks.lines().count() > 10);
}

#[test]
fn lattice_checkpoint_resumes() {
    let dir = tempfile::tempdir().unwrap();
    let first = dir.path().join("a");
    let base = ["photonwork", "lattice", "--delta-lw", "1", "--detuning", "0", "--bandwidth", "2000", "--x-extent", "12"];
    let mut a = base.to_vec();
    a.extend_from_slice(&["--t-end", "4", "--snapshot-points", "51", "--out", first.to_str().unwrap()]);
    assert_eq!(run(a), 0);
    let ckpt = first.join("lattice.ckpt");
    let second = dir.path().join("b");
    let mut b = base.to_vec();
    b.extend_from_slice(&["--t-end", "8", "--snapshot-points", "51", "--resume", ckpt.to_str().unwrap(), "--out", second.to_str().unwrap()]);
    assert_eq!(run(b), 0);
    let summary: serde_json::Value = serde_json::from_slice(&fs::read(second.join("lattice.json")).unwrap()).unwrap();
    assert!((summary["final_time"].as_f64().unwrap() - 8.0).abs() < 1e-2);
}
