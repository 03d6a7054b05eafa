//! End-to-end runs of the g2ein binary.

use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("g2ein-cli-{}-{name}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

/// Runs a subcommand with the given config text; returns the exit code.
fn run(sub: &str, dir: &Path, config: Option<&str>, extra: &[&str]) -> i32 {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_g2ein"));
    cmd.arg(sub).arg("--out").arg(dir.join("out"));
    if let Some(text) = config {
        let path = dir.join("run.toml");
        std::fs::write(&path, text).unwrap();
        cmd.arg("--config").arg(path);
    }
    cmd.args(extra);
    let out = cmd.output().unwrap();
    out.status.code().unwrap()
}

fn report(dir: &Path, sub: &str) -> Value {
    serde_json::from_str(&std::fs::read_to_string(dir.join("out").join(format!("{sub}.json"))).unwrap()).unwrap()
}

fn csv_header(path: &Path) -> String {
    std::fs::read_to_string(path).unwrap().lines().next().unwrap().to_string()
}

const SMALL: &str = "seed = 5\n[verify]\nsamples = 8\n[solve]\nn = 16\n[fuchsian]\nn_theta = 4\nn_alpha = 4\nsextic_samples = 4\nt_steps = 9\n";

#[test]
fn verify_passes_on_defaults() {
    let dir = scratch("verify");
    assert_eq!(run("verify", &dir, None, &[]), 0);
    let r = report(&dir, "verify");
    assert_eq!(r["suite"], "verify");
    assert_eq!(r["passed"], true);
    assert_eq!(r["schema_version"], 1);
    // SHA-256 of the empty configuration text.
    assert_eq!(r["provenance"]["config_hash"], "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    assert_eq!(r["provenance"]["seed"], 0);
}

#[test]
fn zero_tolerance_fails_verification() {
    let dir = scratch("zero-tol");
    assert_eq!(run("verify", &dir, Some("[verify]\ntol = 0.0\nsamples = 4\n"), &[]), 1);
    assert_eq!(report(&dir, "verify")["passed"], false);
}

#[test]
fn malformed_config_is_a_usage_error() {
    let dir = scratch("malformed");
    assert_eq!(run("verify", &dir, Some("[verify\nsamples = "), &[]), 2);
    assert_eq!(run("solve", &dir, Some("[solve]\nn = 1\n"), &[]), 2);
    assert_eq!(run("fuchsian", &dir, Some("unknown_key = 3\n"), &[]), 2);
}

#[test]
fn solve_writes_fields() {
    let dir = scratch("solve");
    assert_eq!(run("solve", &dir, Some(SMALL), &[]), 0);
    let r = report(&dir, "solve");
    assert_eq!(r["passed"], true);
    assert_eq!(r["provenance"]["seed"], 5);
    assert_eq!(csv_header(&dir.join("out/fields.csv")), "ix,iy,x,y,psi1,psi2");
    let rows = std::fs::read_to_string(dir.join("out/fields.csv")).unwrap().lines().count();
    assert_eq!(rows, 1 + 16 * 16);
}

#[test]
fn fuchsian_writes_tables() {
    let dir = scratch("fuchsian");
    assert_eq!(run("fuchsian", &dir, Some(SMALL), &[]), 0);
    assert_eq!(report(&dir, "fuchsian")["passed"], true);
    let out = dir.join("out");
    assert_eq!(csv_header(&out.join("fiber.csv")), "x,y,theta,alpha,r,l1,l2,l3,l4,l5,l6,l7");
    assert_eq!(csv_header(&out.join("classification.csv")), "label,null,gw_member,k_stratum,omega_sector,predicted_preimages");
    assert_eq!(csv_header(&out.join("degenerate.csv")), "t,q6_direct,closed_form,sign,count");
}

#[test]
fn pinned_runs_are_reproducible() {
    for sub in ["verify", "solve", "fuchsian"] {
        let (a, b) = (scratch(&format!("{sub}-a")), scratch(&format!("{sub}-b")));
        assert_eq!(run(sub, &a, Some(SMALL), &["--seed", "11"]), 0);
        assert_eq!(run(sub, &b, Some(SMALL), &["--seed", "11"]), 0);
        let (mut ra, mut rb) = (report(&a, sub), report(&b, sub));
        assert_eq!(ra["provenance"]["seed"], 11);
        assert_eq!(ra["provenance"]["config_hash"].as_str().unwrap().len(), 64);
        ra["provenance"]["timestamp"] = Value::Null;
        rb["provenance"]["timestamp"] = Value::Null;
        assert_eq!(ra, rb, "{sub}");
        for entry in std::fs::read_dir(a.join("out")).unwrap() {
            let name = entry.unwrap().file_name();
            if Path::new(&name).extension().is_some_and(|e| e == "csv") {
                let x = std::fs::read(a.join("out").join(&name)).unwrap();
                let y = std::fs::read(b.join("out").join(&name)).unwrap();
                assert_eq!(x, y, "{name:?}");
            }
        }
    }
}

#[test]
fn seed_changes_the_samples() {
    let (a, b) = (scratch("seed-a"), scratch("seed-b"));
    assert_eq!(run("fuchsian", &a, Some(SMALL), &["--seed", "1"]), 0);
    assert_eq!(run("fuchsian", &b, Some(SMALL), &["--seed", "2"]), 0);
    let x = std::fs::read(a.join("out/classification.csv")).unwrap();
    let y = std::fs::read(b.join("out/classification.csv")).unwrap();
    assert_ne!(x, y);
}
