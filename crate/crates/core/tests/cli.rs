use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

fn ecompat(args: &[&str], path: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ecompat"))
        .arg("verify")
        .arg(path)
        .args(args)
        .output()
        .unwrap()
}

#[test]
fn valid_fixture_exits_zero() {
    let out = ecompat(&["--stable"], &fixture("tangent-r2.json"));
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["seed"], 7);
    assert_eq!(report["conventions"].as_str().unwrap().len(), 64);
}

#[test]
fn mutation_exits_one() {
    let out = ecompat(&["--check", "compatible", "--text"], &fixture("mutated-tangent-r2-J.json"));
    assert_eq!(out.status.code(), Some(1));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("compatible: FAIL"), "{text}");
}

#[test]
fn missing_data_is_skipped_not_failed() {
    let out = ecompat(&["--check", "momentum-map"], &fixture("tangent-r2.json"));
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["results"][0]["verdict"], "skipped");
}

#[test]
fn usage_and_parse_errors_exit_two() {
    let out = ecompat(&["--check", "no-such-check"], &fixture("tangent-r2.json"));
    assert_eq!(out.status.code(), Some(2));

    let dir = std::env::temp_dir().join(format!("ecompat-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.json");
    std::fs::write(&bad, r#"{"name": "bad", "base": ["x"], "n": 1, "algebroid": {"kind": "tangent"}, "J": {"1": "x +"}}"#)
        .unwrap();
    let out = ecompat(&[], &bad);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("J[1]"));
    std::fs::remove_dir_all(&dir).unwrap();

    let out = Command::new(env!("CARGO_BIN_EXE_ecompat")).arg("frobnicate").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}
