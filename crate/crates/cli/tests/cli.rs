use std::path::PathBuf;
use std::process::{Command, Output};

fn atomcert(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_atomcert"))
        .args(args)
        .output()
        .unwrap()
}

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../core/tests/fixtures")
        .join(name)
        .to_string_lossy()
        .into_owned()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn period_prints_leading_coefficients() {
    let o = atomcert(&["period", "--instance", "verra", "--order", "4"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("1, 4, 15, 280/9, 6055/144"));
}

#[test]
fn solve_reports_surviving_solution() {
    let o = atomcert(&["solve", "--instance", "verra"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let accepted = out.split("accepted:").nth(1).unwrap();
    assert!(accepted.contains("(s = 2, t = 6, u = 2, v = 16)"));
    assert!(!accepted.contains("14/3"));
}

#[test]
fn through_marks_later_stages_not_run() {
    let o = atomcert(&["certify", "--through", "solve", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["stages"]["spectrum"]["status"], "not run");
    assert_eq!(v["stages"]["atoms"]["status"], "not run");
    assert_eq!(v["verdict"], "not run");
}

#[test]
fn short_order_is_an_engine_error() {
    let o = atomcert(&["solve", "--order", "8"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("below 10"));
}

#[test]
fn invalid_instances_are_engine_errors() {
    let o = atomcert(&["certify", "--instance", &fixture("bad_tdecomp.inst")]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("[hodge]"));
    let o = atomcert(&["certify", "--instance", "/nonexistent/x.inst"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn out_flag_writes_the_certificate() {
    let path = std::env::temp_dir().join(format!("atomcert-{}.json", std::process::id()));
    let o = atomcert(&[
        "certify",
        "--format",
        "json",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert_eq!(v["verdict"], "IRRATIONAL_CERTIFIED");
    assert!(v["engine_version"].is_string());
    assert_eq!(v["stages"]["solve"]["accepted"][0]["t"], "6/1");
}

#[test]
fn text_certify_ends_with_verdict() {
    let o = atomcert(&["certify"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o)
        .trim_end()
        .ends_with("verdict: IRRATIONAL_CERTIFIED"));
}
