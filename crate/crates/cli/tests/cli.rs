use std::path::Path;
use std::process::{Command, Output};

use galcov_core::presentation::parse_presentation;
use serde_json::Value;

fn galcov(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_galcov"))
        .args(args)
        .current_dir(dir)
        .env("GALCOV_CACHE", dir.join("cache"))
        .env_remove("GALCOV_LOG")
        .output()
        .expect("binary runs")
}

#[test]
fn verify_n2_passes_with_json_report() {
    let dir = tempfile::tempdir().unwrap();
    let out = galcov(dir.path(), &["verify", "--n", "2", "--mod", "2", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["schema"], 1);
    assert_eq!(v["pass"], true);
    assert_eq!(v["config"]["n"], 2);
    assert_eq!(v["config"]["mod"], 2);
    assert_eq!(v["data"]["enumerated_order"], 1536);
    let snf = v["checks"].as_array().unwrap().iter().find(|c| c["name"] == "galois-abelianization").unwrap();
    assert_eq!(snf["actual"]["free_rank"], 6);
    assert!(dir.path().join("cache").join("ptilde-n2-d0-proj.pres").exists());
}

#[test]
fn usage_and_budget_errors_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(galcov(dir.path(), &["verify", "--n", "1"]).status.code(), Some(2));
    assert_eq!(galcov(dir.path(), &["verify", "--n", "2", "--mod", "1"]).status.code(), Some(2));
    assert_eq!(galcov(dir.path(), &["verify"]).status.code(), Some(2));
    let out = galcov(dir.path(), &["verify", "--n", "2", "--max-cosets", "100"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stdout).contains("quotient-order"));
}

#[test]
fn cached_outputs_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["kernel", "--n", "2", "--projective", "--window", "2"];
    let first = galcov(dir.path(), &args);
    let second = galcov(dir.path(), &args);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);
    assert!(dir.path().join("cache").join("galois-n2-w2.pres").exists());
}

#[test]
fn presentation_file_round_trips_through_abelianize() {
    let dir = tempfile::tempdir().unwrap();
    let out = galcov(dir.path(), &["presentation", "--n", "2", "--squares", "--out", "p.txt"]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(dir.path().join("p.txt")).unwrap();
    let p = parse_presentation(&text).unwrap();
    assert_eq!(p.generators.len(), 8);
    let out = galcov(dir.path(), &["abelianize", "--n", "2", "--input", "p.txt", "--format", "json"]);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["relators"], p.relators.len());
    std::fs::write(dir.path().join("bad.txt"), "generators: g1\ng1 g9\n").unwrap();
    let out = galcov(dir.path(), &["abelianize", "--n", "2", "--input", "bad.txt"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
}

#[test]
fn small_commands() {
    let dir = tempfile::tempdir().unwrap();
    let out = galcov(dir.path(), &["psi", "--n", "3", "--word", "g1 g2"]);
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "(1 2 6)");
    let out = galcov(dir.path(), &["degenerate", "--n", "2", "--format", "json"]);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["lines"].as_array().unwrap().len(), 4);
    assert_eq!(v["incidental_pairs"].as_array().unwrap().len(), 2);
    let out = galcov(dir.path(), &["monodromy", "--n", "2", "--format", "json"]);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["factors"].as_array().unwrap().len(), 24);
    assert_eq!(v["census"]["exponent_sum"], 56);
    assert_eq!(v["product_is_full_twist"], true);
    let out = galcov(dir.path(), &["kernel", "--n", "2", "--reduced", "--projective"]);
    let p = parse_presentation(&String::from_utf8_lossy(&out.stdout)).unwrap();
    assert_eq!(p.generators.len(), 24);
}
