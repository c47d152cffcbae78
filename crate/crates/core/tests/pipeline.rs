//! End-to-end tests of the command-line interface: spawn the real binary,
//! feed it config files, and check reports, exports, and exit codes.

use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use sturmlab::harness::export::read_matrix_archive;
use sturmlab::harness::Report;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_sturmlab"))
}

fn write_config(dir: &Path, name: &str, body: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, body).unwrap();
    path.to_str().unwrap().to_string()
}

fn run_ok(args: &[&str]) -> Output {
    let out = bin().args(args).output().unwrap();
    assert!(
        out.status.success(),
        "command {args:?} failed with {:?}\nstderr: {}",
        out.status.code(),
        String::from_utf8_lossy(&out.stderr)
    );
    out
}

const SCAN_CONFIG: &str = r#"{
    "experiment": "robin_1d",
    "params": {"delta_b0": [0.0, 0.4]},
    "resolution": 18,
    "seed": 40,
    "random_perturbation_c": 0.15,
    "scan_thetas": [0.7853981633974483, 3.141592653589793],
    "scan_radii": [0.5, 5.0, 50.0]
}"#;

#[test]
fn repeated_runs_write_byte_identical_reports() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "scan.json", SCAN_CONFIG);
    let out_a = dir.path().join("a");
    let out_b = dir.path().join("b");
    run_ok(&["run", "--config", &cfg, "--out", out_a.to_str().unwrap()]);
    run_ok(&["run", "--config", &cfg, "--out", out_b.to_str().unwrap()]);
    let a = fs::read(out_a.join("report.json")).unwrap();
    let b = fs::read(out_b.join("report.json")).unwrap();
    assert!(!a.is_empty());
    assert_eq!(a, b, "same config and seed must reproduce the report byte for byte");
    // Atomic writes leave no scratch files behind.
    for entry in fs::read_dir(&out_a).unwrap() {
        let name = entry.unwrap().file_name();
        assert!(!name.to_string_lossy().ends_with(".tmp"), "leftover {name:?}");
    }
}

#[test]
fn stdout_carries_the_report_when_no_output_directory_is_set() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "plain.json", r#"{"experiment": "neumann_1d", "resolution": 20}"#);
    let out = run_ok(&["run", "--config", &cfg]);
    let report: Report = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report.n_dofs, Some(21));
    assert_eq!(report.config.experiment, "neumann_1d");
    assert!(report.spectral.is_some());
    // Timings are diagnostics: stderr only, never part of the document.
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("analyze"), "stderr missing stage timings: {err}");
    assert!(!String::from_utf8_lossy(&out.stdout).contains("timings"));
}

#[test]
fn seed_override_reroutes_the_random_perturbation() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "scan.json", SCAN_CONFIG);
    let base = run_ok(&["run", "--config", &cfg]);
    let same = run_ok(&["run", "--config", &cfg, "--seed", "40"]);
    let other = run_ok(&["run", "--config", &cfg, "--seed", "41"]);
    assert_eq!(base.stdout, same.stdout, "explicit matching seed must not change bytes");
    assert_ne!(base.stdout, other.stdout, "a different seed must change the report");
    let report: Report = serde_json::from_slice(&other.stdout).unwrap();
    assert_eq!(report.config.seed, 41, "config echo must show the effective seed");
}

#[test]
fn csv_export_writes_one_table_per_populated_section() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "scan.json", SCAN_CONFIG);
    let out_dir = dir.path().join("csv");
    run_ok(&["run", "--config", &cfg, "--out", out_dir.to_str().unwrap(), "--format", "csv"]);
    for (name, header) in [
        ("eigenvalues.csv", "index,re,im,abs,arg,cluster,chain_len"),
        ("s_numbers.csv", "index,mu"),
        ("scans.csv", "theta,r,norm,bound,ok"),
        ("completeness.csv", "m,span_dim,h_minus,l2,sl"),
    ] {
        let text = fs::read_to_string(out_dir.join(name)).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next(), Some(header), "{name} header");
        assert!(lines.next().is_some(), "{name} has no data rows");
    }
    // 19 dofs, two scan rays with three radii each.
    let scans = fs::read_to_string(out_dir.join("scans.csv")).unwrap();
    assert_eq!(scans.lines().count(), 1 + 6);
}

#[test]
fn csv_to_stdout_is_a_config_error() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(dir.path(), "plain.json", r#"{"experiment": "neumann_1d", "resolution": 12}"#);
    let out = bin().args(["run", "--config", &cfg, "--format", "csv"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("error:"));
}

#[test]
fn config_problems_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("nope.json");
    let out = bin().args(["run", "--config", missing.to_str().unwrap()]).output().unwrap();
    assert_eq!(out.status.code(), Some(2), "missing config file");

    let bad = write_config(dir.path(), "bad.json", r#"{"experiment": "neumann_1d", "resolutoin": 1}"#);
    let out = bin().args(["run", "--config", &bad]).output().unwrap();
    assert_eq!(out.status.code(), Some(2), "unknown key in config");

    let unknown = write_config(dir.path(), "unknown.json", r#"{"experiment": "laplace_3d", "resolution": 8}"#);
    let out = bin().args(["run", "--config", &unknown]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(
        String::from_utf8_lossy(&out.stderr).contains("unknown problem"),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
}

#[test]
fn numerical_breakdown_exits_three() {
    // Pure-Neumann zero-order-free problem: the unperturbed Gram matrix has
    // the constant vector in its kernel, so the factorization must fail and
    // be reported as a numerical error, not a config one.
    let dir = tempfile::tempdir().unwrap();
    let cfg = write_config(
        dir.path(),
        "singular.json",
        r#"{"experiment": "neumann_1d", "resolution": 16, "params": {"a00": 0.0}}"#,
    );
    let out = bin().args(["run", "--config", &cfg]).output().unwrap();
    assert_eq!(out.status.code(), Some(3));
    assert!(
        String::from_utf8_lossy(&out.stderr).contains("numerical failure"),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
}

#[test]
fn list_problems_prints_the_whole_registry_in_order() {
    let out = run_ok(&["list-problems"]);
    let names: Vec<&str> = std::str::from_utf8(&out.stdout).unwrap().lines().collect();
    assert_eq!(
        names,
        vec![
            "neumann_1d",
            "robin_1d",
            "zaremba_1d",
            "convection_1d",
            "zaremba_2d",
            "convection_2d",
            "dbar_noncoercive_2d",
            "keldysh_lab",
            "bitsadze_witness",
        ]
    );
}

#[test]
fn dumped_matrices_match_a_direct_assembly() {
    let dir = tempfile::tempdir().unwrap();
    let cfg_text = r#"{"experiment": "convection_1d", "params": {"b": [0.0, 2.0]}, "resolution": 15}"#;
    let cfg = write_config(dir.path(), "dump.json", cfg_text);
    let out_dir = dir.path().join("mats");
    run_ok(&["dump-matrices", "--config", &cfg, "--out", out_dir.to_str().unwrap()]);

    let spec = sturmlab::problem::builtin_problem(
        "convection_1d",
        &[("b".to_string(), num_complex::Complex64::new(0.0, 2.0))].into_iter().collect(),
    )
    .unwrap();
    let sys = sturmlab::discretize::discretize(&spec, 15, 1).unwrap();
    for (name, want) in [("m.json", &sys.m), ("k0.json", &sys.k0), ("d.json", &sys.d)] {
        let got = read_matrix_archive(&out_dir.join(name)).unwrap();
        assert_eq!(got.n_rows(), sys.n());
        assert_eq!(got.data(), want.data(), "{name} differs from direct assembly");
    }
}
