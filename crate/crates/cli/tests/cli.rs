// SPDX-License-Identifier: Apache-2.0

//! End-to-end checks of the `ucg` binary: exit codes, formats, output files.

use std::path::Path;
use std::process::{Command, Output};

fn ucg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ucg"))
        .args(args)
        .env_remove("UCG_MAX_N")
        .output()
        .expect("spawn ucg")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_str(stdout(out).trim()).unwrap()
}

#[test]
fn spectrum_of_six() {
    let out = ucg(&["spectrum", "--n", "6"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    let eig: Vec<i64> = v["eigenvalues"]
        .as_array()
        .unwrap()
        .iter()
        .map(|x| x.as_i64().unwrap())
        .collect();
    assert_eq!(eig, [2, 1, -1, -2, -1, 1]);
}

#[test]
fn spectrum_csv_has_header_and_rows() {
    let out = ucg(&["spectrum", "--n", "4", "--format", "csv"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "d,gcd,lambda,multiplicity");
    assert_eq!(lines.len(), 5);
    assert_eq!(lines[1], "0,4,2,1");
}

#[test]
fn invalid_n_exits_two() {
    assert_eq!(code(&ucg(&["spectrum", "--n", "1"])), 2);
    assert_eq!(code(&ucg(&["spectrum", "--n", "0"])), 2);
    assert_eq!(code(&ucg(&["verify", "--n", "5..2"])), 2);
    assert_eq!(code(&ucg(&["detect", "--n", "6", "--u", "0", "--v", "0", "--t", "1"])), 2);
    assert_eq!(code(&ucg(&["detect", "--n", "6", "--u", "0", "--v", "9", "--t", "1"])), 2);
    assert_eq!(code(&ucg(&["detect", "--n", "6", "--u", "0", "--v", "3", "--t", "pi/"])), 2);
}

#[test]
fn max_n_cap() {
    let out = Command::new(env!("CARGO_BIN_EXE_ucg"))
        .args(["spectrum", "--n", "20"])
        .env("UCG_MAX_N", "10")
        .output()
        .unwrap();
    assert_eq!(code(&out), 2);
    assert!(String::from_utf8_lossy(&out.stderr).contains("UCG_MAX_N"));
    assert_eq!(code(&ucg(&["spectrum", "--n", "5000"])), 2);
}

#[test]
fn detect_examples() {
    let out = ucg(&["detect", "--n", "6", "--u", "0", "--v", "3", "--t", "2*pi/3"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["class"], "proper_qfr");
    assert_eq!(v["t_exact"], "2*pi/3");
    let beta: Vec<f64> = v["beta"].as_array().unwrap().iter().map(|x| x.as_f64().unwrap()).collect();
    assert!((beta[0] * beta[0] + beta[1] * beta[1] - 0.75).abs() <= 1e-9);

    let out = ucg(&["detect", "--n", "4", "--u", "0", "--v", "2", "--t", "pi/2"]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["class"], "pst");

    let out = ucg(&["detect", "--n", "5", "--u", "0", "--v", "2", "--t", "pi/2"]);
    assert_eq!(code(&out), 1);
    assert_eq!(json(&out)["class"], "none");
}

#[test]
fn evolve_json_and_csv() {
    let out = ucg(&["evolve", "--n", "4", "--t", "0"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    let m = v["matrix"].as_array().unwrap();
    assert_eq!(m.len(), 4);
    assert_eq!(m[1][1][0].as_f64().unwrap(), 1.0);
    assert_eq!(m[1][2][0].as_f64().unwrap(), 0.0);

    let out = ucg(&["evolve", "--n", "6", "--t", "pi/3", "--oracle"]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["method"], "oracle");

    let out = ucg(&["evolve", "--n", "6", "--format", "csv", "--grid", "8"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "t,p0,p1,p2,p3,p4,p5");
    assert_eq!(lines.len(), 9);
    let total: f64 = lines[3].split(',').skip(1).map(|x| x.parse::<f64>().unwrap()).sum();
    assert!((total - 1.0).abs() <= 1e-12);

    assert_eq!(code(&ucg(&["evolve", "--n", "6"])), 2);
}

#[test]
fn scan_reports_hits_only_for_revival_n() {
    let out = ucg(&["scan", "--n", "5..6"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let lines: Vec<serde_json::Value> = text.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(lines.len(), 2);
    assert_eq!(lines[0]["n"], 5);
    assert!(lines[0]["hits"].as_array().unwrap().is_empty());
    let hits = lines[1]["hits"].as_array().unwrap();
    assert!(!hits.is_empty());
    assert!(hits.iter().all(|h| h["v"] == 3 && h["class"] == "proper_qfr"));
}

#[test]
fn scan_writes_files_atomically() {
    let dir = tempfile::tempdir().unwrap();
    let single = dir.path().join("six.json");
    let out = ucg(&["scan", "--n", "6", "--output", single.to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).is_empty());
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&single).unwrap()).unwrap();
    assert_eq!(v["n"], 6);

    let many = dir.path().join("many");
    assert_eq!(code(&ucg(&["scan", "--n", "2..4", "--output", many.to_str().unwrap()])), 0);
    for n in 2..=4 {
        assert!(many.join(format!("scan-n{n}.json")).is_file());
    }
    // nothing but the final files is left behind
    assert_eq!(std::fs::read_dir(&many).unwrap().count(), 3);
}

#[test]
fn unwritable_output_exits_two() {
    let target = Path::new("/nonexistent-dir/sub/out.json");
    assert_eq!(code(&ucg(&["scan", "--n", "6", "--output", target.to_str().unwrap()])), 2);
    assert_eq!(code(&ucg(&["verify", "--n", "2..3", "--output", target.to_str().unwrap()])), 2);
}

#[test]
fn emit_profile_csv() {
    let out = ucg(&["scan", "--n", "6", "--grid", "16", "--emit-profile"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "t,alpha_sq,beta_sq,residual");
    assert_eq!(lines.len(), 17);
    assert_eq!(code(&ucg(&["scan", "--n", "6..8", "--emit-profile"])), 2);
}

#[test]
fn verify_small_range_passes_and_is_deterministic() {
    let a = ucg(&["verify", "--n", "2..6"]);
    let b = ucg(&["verify", "--n", "2..6"]);
    assert_eq!(code(&a), 0);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(stdout(&a).lines().count(), 5);
    assert_eq!(code(&ucg(&["verify", "--n", "2..2"])), 0);
    assert_eq!(code(&ucg(&["verify", "--n", "1..3"])), 2);
}

#[test]
fn scan_rejects_coarse_grid() {
    assert_eq!(code(&ucg(&["scan", "--n", "6", "--grid", "4"])), 2);
}
