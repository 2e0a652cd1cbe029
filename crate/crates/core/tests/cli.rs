//! End-to-end checks of the `bernstein-dg` binary surface.

use std::process::Command;

fn binary() -> Command {
    Command::new(env!("CARGO_BIN_EXE_bernstein-dg"))
}

#[test]
fn run_subcommand_writes_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("run");
    let status = binary()
        .args([
            "run",
            "--problem",
            "linear",
            "--degree",
            "4",
            "--elements",
            "10",
            "--tmax",
            "0.05",
            "--filter",
            "bernstein",
            "--out",
        ])
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());
    for name in ["solution.csv", "sensor.csv", "diagnostics.csv", "summary.txt", "config.txt"] {
        assert!(out.join(name).exists(), "{name} missing");
    }
}

#[test]
fn run_accepts_bounds_and_timing() {
    let dir = tempfile::tempdir().unwrap();
    let status = binary()
        .args([
            "run",
            "--problem",
            "buckley-leverett",
            "--degree",
            "4",
            "--elements",
            "10",
            "--tmax",
            "0.01",
            "--kappa",
            "0.6",
            "--bounds",
            "0,1",
            "--timing",
            "step",
            "--out",
        ])
        .arg(dir.path().join("bl"))
        .status()
        .unwrap();
    assert!(status.success());
}

#[test]
fn invalid_arguments_exit_with_usage_error() {
    let dir = tempfile::tempdir().unwrap();
    let status = binary()
        .args([
            "run",
            "--problem",
            "linear",
            "--degree",
            "4",
            "--elements",
            "10",
            "--tmax",
            "0.05",
            "--kappa",
            "1.5",
            "--out",
        ])
        .arg(dir.path().join("bad"))
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(2));
}

#[test]
fn sweep_subcommand_writes_manifest() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("sweep");
    let status = binary()
        .args([
            "sweep",
            "--problem",
            "linear",
            "--degree",
            "4",
            "--elements",
            "5",
            "--tmax",
            "0.02",
            "--kappa-list",
            "0.25,0.75",
            "--elements-list",
            "5,10",
            "--out",
        ])
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());
    let manifest = std::fs::read_to_string(out.join("index.csv")).unwrap();
    assert_eq!(manifest.lines().count(), 1 + 4, "manifest: {manifest}");
}

#[test]
fn output_root_env_var_is_honoured() {
    let dir = tempfile::tempdir().unwrap();
    let status = binary()
        .args([
            "run",
            "--problem",
            "linear",
            "--degree",
            "4",
            "--elements",
            "5",
            "--tmax",
            "0.01",
            "--out",
            "rooted-run",
        ])
        .env("BERNSTEIN_DG_OUT", dir.path())
        .status()
        .unwrap();
    assert!(status.success());
    assert!(dir.path().join("rooted-run/solution.csv").exists());
}
