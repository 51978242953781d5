use std::process::{Command, Output};

use serde_json::Value;

fn zfprop(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_zfprop")).args(args).output().unwrap()
}

fn json(args: &[&str]) -> Value {
    let out = zfprop(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn stdout(args: &[&str]) -> String {
    let out = zfprop(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn analyze_dart() {
    let v = json(&["analyze", "--family", "dart"]);
    assert_eq!((v["Z"].as_u64(), v["pt"].as_u64(), v["PT"].as_u64()), (Some(2), Some(3), Some(3)));
    assert_eq!(v["eff"].as_array().unwrap().len(), 6);
}

#[test]
fn analyze_inline_graph6() {
    let v = json(&["analyze", "--g6", "Cr"]);
    assert_eq!((v["n"].as_u64(), v["Z"].as_u64(), v["pt"].as_u64()), (Some(4), Some(2), Some(1)));
}

#[test]
fn analyze_file_gives_array_and_csv() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("in.g6");
    std::fs::write(&path, "Cr\nD}_\n").unwrap();
    let p = path.to_str().unwrap();
    let v = json(&["analyze", "--g6-file", p]);
    assert_eq!(v.as_array().unwrap().len(), 2);
    let csv = stdout(&["--format", "csv", "analyze", "--g6-file", p]);
    assert_eq!(csv.lines().count(), 3);
}

#[test]
fn generalized_star_family() {
    let v = json(&["family", "--family", "genstar", "2", "5", "11"]);
    assert_eq!((v["pt"].as_u64(), v["PT"].as_u64(), v["pd"].as_u64()), (Some(12), Some(16), Some(4)));
    let rows = v["rows"].as_array().unwrap();
    let times: Vec<u64> = rows.iter().map(|r| r["pt"].as_u64().unwrap()).collect();
    assert_eq!(times, [15, 15, 16, 15, 15, 16, 12, 12, 13]);

    let csv = stdout(&["family", "--family", "genstar", "2", "3", "4", "--format", "csv"]);
    let row = csv.lines().find(|l| l.starts_with("\"{u2,u3}\"") || l.starts_with("{u2,u3}")).unwrap();
    assert!(row.contains(",5,"), "{row}");
}

#[test]
fn comb_family() {
    let csv = stdout(&["--format", "csv", "family", "--family", "comb", "8"]);
    assert_eq!(csv.lines().nth(1), Some("8,16,9,8,4,3,3,true"));
}

#[test]
fn witnesses() {
    let v = json(&["witness", "--family", "Kn", "3"]);
    assert_eq!((v["m_lower"].as_u64(), v["m_squared_is_2i"].as_bool()), (Some(3), Some(true)));
    let v = json(&["witness", "--family", "P2", "--steps", "2"]);
    assert_eq!((v["order"].as_u64(), v["m_lower"].as_u64(), v["z_exact"].as_u64()), (Some(8), Some(4), Some(4)));
    let csv = stdout(&["witness", "--family", "Kn", "2", "--steps", "2", "--format", "csv"]);
    assert_eq!(csv.lines().nth(1), Some("K2,2,8,Gr`HOk,4,4,1,true"));
}

#[test]
fn malformed_graph6_exits_3() {
    let out = zfprop(&["analyze", "--g6", "C~~~~"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(!out.stderr.is_empty());
}

#[test]
fn budget_and_argument_errors_exit_2() {
    assert_eq!(zfprop(&["analyze", "--family", "cycle", "40"]).status.code(), Some(2));
    assert_eq!(zfprop(&["analyze", "--family", "genstar", "0", "1"]).status.code(), Some(2));
    assert_eq!(zfprop(&["corpus-verify", "--suites", "nonsense"]).status.code(), Some(2));
}

#[test]
fn environment_overrides_budget() {
    let out = Command::new(env!("CARGO_BIN_EXE_zfprop"))
        .args(["analyze", "--family", "path", "8"])
        .env("ZFPROP_BUDGET_Z", "6")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("budget"));
}

#[test]
fn out_file_and_exceptions() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("summary.csv");
    let exc = dir.path().join("exceptions.g6");
    let status = zfprop(&[
        "--format",
        "csv",
        "--out",
        out.to_str().unwrap(),
        "corpus-verify",
        "--suites",
        "zigzag,remark-bounds",
        "--exceptions",
        exc.to_str().unwrap(),
    ])
    .status;
    assert!(status.success());
    let csv = std::fs::read_to_string(&out).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("suite,graphs,pass,violation,skipped_budget,not_applicable"));
    assert!(lines.all(|l| l.split(',').nth(3) == Some("0")), "{csv}");
    let g6 = std::fs::read_to_string(&exc).unwrap();
    assert!(g6.lines().count() > 0);
    let sidecar: Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("exceptions.g6.json")).unwrap()).unwrap();
    assert_eq!(sidecar.as_array().unwrap().len(), g6.lines().count());
}
