//! Golden reports and the exit-code contract of the `fedosov` binary.
//! `UPDATE_GOLDEN=1 cargo test --test cli` rewrites tests/golden.

use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;

const CASES: &[(&str, &str)] = &[
    ("star", "flat_star"),
    ("momentum", "rotation"),
    ("momentum", "translations"),
    ("class", "rotation"),
    ("class", "omega_translation"),
    ("compare", "rotation"),
    ("compare", "rotation_transport"),
    ("compare", "omega_translation"),
    ("verify", "curved"),
    ("verify", "omega_translation"),
];

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

fn fixture(name: &str) -> PathBuf {
    root().join("fixtures").join(format!("{name}.json"))
}

fn golden(cmd: &str, name: &str) -> PathBuf {
    root().join("tests/golden").join(format!("{cmd}_{name}.json"))
}

fn bin(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_fedosov")).args(args).output().unwrap();
    (
        out.status.code().unwrap(),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

/// Drops the timing entry and renders the rest the way reports are rendered.
fn without_timing(stdout: &str) -> String {
    let mut v: Value = serde_json::from_str(stdout).unwrap();
    let timing = v.as_object_mut().unwrap().remove("timing").expect("binary reports timing");
    assert!(timing["elapsed_ms"].is_u64());
    let mut s = serde_json::to_string_pretty(&v).unwrap();
    s.push('\n');
    s
}

fn run(cmd: &str, name: &str) -> (i32, String) {
    let config = fixture(name);
    let (code, stdout, stderr) = bin(&[cmd, "--config", config.to_str().unwrap()]);
    assert!(stderr.is_empty(), "{cmd} {name}: {stderr}");
    (code, without_timing(&stdout))
}

#[test]
fn golden_reports() {
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    for (cmd, name) in CASES {
        let (code, report) = run(cmd, name);
        assert_eq!(code, 0, "{cmd} {name}");
        let path = golden(cmd, name);
        if update {
            std::fs::create_dir_all(path.parent().unwrap()).unwrap();
            std::fs::write(&path, &report).unwrap();
        }
        let expected = std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("missing {}", path.display()));
        assert!(report == expected, "{cmd} {name}: report differs from {}", path.display());
    }
}

#[test]
fn reports_are_deterministic_and_match_the_library() {
    let (_, a) = run("compare", "rotation_transport");
    let (_, b) = run("compare", "rotation_transport");
    assert_eq!(a, b);
    let text = std::fs::read_to_string(fixture("rotation_transport")).unwrap();
    let lib = fedosov_engine::cli::run_config_text(
        &fedosov_engine::cli::Command::Compare,
        &text,
        &Default::default(),
    )
    .unwrap();
    assert_eq!(lib.render(), a);
}

fn result(report: &str) -> Value {
    serde_json::from_str::<Value>(report).unwrap()["result"].clone()
}

#[test]
fn star_report_matches_moyal_values() {
    // x1 ⋆ x2 = x1x2 + (ν/2)ω^{12} for the Moyal product.
    let (_, r) = run("star", "flat_star");
    let r = result(&r);
    assert_eq!(r["coefficients"], serde_json::json!(["x1*x2", "1/2", "0"]));
}

#[test]
fn flags_override_config() {
    let config = fixture("flat_star");
    let (code, out, _) = bin(&["star", "--config", config.to_str().unwrap(), "--f", "x1^2", "--g", "x2^2", "--order", "3"]);
    assert_eq!(code, 0);
    // Moyal: x1²⋆x2² = x1²x2² + 2ν x1x2 + ν²/2
    assert_eq!(result(&out)["coefficients"], serde_json::json!(["x1^2*x2^2", "2*x1*x2", "1/2", "0"]));
}

#[test]
fn out_flag_writes_file() {
    let dir = std::env::temp_dir().join(format!("fedosov-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let out = dir.join("report.json");
    let config = fixture("flat_star");
    let (code, stdout, _) = bin(&["star", "--config", config.to_str().unwrap(), "--out", out.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert!(stdout.is_empty());
    let written = std::fs::read_to_string(&out).unwrap();
    assert_eq!(without_timing(&written), run("star", "flat_star").1);
    std::fs::remove_dir_all(&dir).unwrap();
}

fn write_temp(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("fedosov-cli-{}-{name}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join("input.json");
    std::fs::write(&p, text).unwrap();
    p
}

#[test]
fn input_errors_exit_2() {
    let missing = Path::new("/nonexistent/config.json");
    assert_eq!(bin(&["star", "--config", missing.to_str().unwrap()]).0, 2);
    let bad = write_temp("bad", r#"{ "dim": 2, "order": 2, "f": "x1 +", "g": "x2" }"#);
    let (code, _, err) = bin(&["star", "--config", bad.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("f:"), "{err}");
    let open = write_temp("open", r#"{ "dim": 4, "order": 2, "Omega": [{ "nu_power": 1, "coeffs": { "2,3": "x1" } }] }"#);
    let (code, _, err) = bin(&["verify", "--config", open.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("closedness"), "{err}");
    assert_eq!(bin(&["frobnicate"]).0, 2);
    let no_g = write_temp("nog", r#"{ "dim": 2, "order": 2, "f": "x1" }"#);
    assert_eq!(bin(&["star", "--config", no_g.to_str().unwrap()]).0, 2);
}

#[test]
fn obstruction_without_report_exits_1() {
    let config = fixture("translations");
    let (code, _, err) = bin(&["class", "--config", config.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(err.contains("no quantum momentum map"), "{err}");
}

#[test]
fn verify_rechecks_witness_and_fails_on_tampering() {
    let config = fixture("rotation_transport");
    let (code, report, _) = bin(&["compare", "--config", config.to_str().unwrap()]);
    assert_eq!(code, 0);
    let saved = write_temp("witness", &report);
    let (code, out, _) = bin(&["verify", "--config", config.to_str().unwrap(), "--witness", saved.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(result(&out)["passed"], Value::Bool(true));

    let mut v: Value = serde_json::from_str(&report).unwrap();
    v["result"]["witness"]["t"] = Value::String("nu*x1".into());
    let tampered = write_temp("tampered", &v.to_string());
    let (code, out, _) = bin(&["verify", "--config", config.to_str().unwrap(), "--witness", tampered.to_str().unwrap()]);
    assert_eq!(code, 1);
    let failed = result(&out)["failed"].clone();
    assert!(failed.as_array().unwrap().iter().any(|f| f == "witness: i_xi C + L_xi t = alpha(xi)"), "{failed}");
}
