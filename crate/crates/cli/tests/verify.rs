mod common;

use common::*;
use std::io::Write;

fn corpus_file(text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

#[test]
fn bundled_corpus_predictions_pass() {
    let out = newtonpoly(&["verify", "--quick"]);
    let text = String::from_utf8_lossy(&out.stdout);
    assert_eq!(code(&out), 0, "{text}");
    assert!(text.contains(" 0 failed"));
    assert!(!text.contains("FAIL"));
}

#[test]
fn wrong_expectation_fails() {
    let f = corpus_file(
        r#"
[[case]]
name = "disc"
poly = "x^2 + y^2"
[case.expect]
growth = "1"

[[case]]
name = "wrong"
poly = "x^2 + y^2"
source = "deliberately wrong"
[case.expect]
growth = "2"
d = "1"
"#,
    );
    let out = newtonpoly(&["verify", f.path().to_str().unwrap(), "--format", "json"]);
    assert_eq!(code(&out), 1);
    let s: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(s["passed"], 2);
    assert_eq!(s["failed"], 1);
    let rows = s["rows"].as_array().unwrap();
    let bad = rows.iter().find(|r| r["status"] == "FAIL").unwrap();
    assert_eq!(bad["case"], "wrong");
    assert_eq!(bad["check"], "growth");
}

#[test]
fn empty_corpus_passes_with_empty_table() {
    let f = corpus_file("# nothing here\n");
    let out = newtonpoly(&["verify", f.path().to_str().unwrap()]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 2);
    assert!(text.contains("0 passed, 0 failed, 0 skipped"));
    let out = newtonpoly(&["verify", f.path().to_str().unwrap(), "--format", "csv"]);
    assert_eq!(
        String::from_utf8(out.stdout).unwrap().trim(),
        "case,check,expected,actual,status"
    );
}

#[test]
fn corpus_errors() {
    let f = corpus_file("[[case]]\nname = 3\n");
    assert_eq!(
        code(&newtonpoly(&["verify", f.path().to_str().unwrap()])),
        2
    );
    let f = corpus_file("[[case]]\nname = \"a\"\npoly = \"x\"\n[case.expect]\nbogus = 1\n");
    assert_eq!(
        code(&newtonpoly(&["verify", f.path().to_str().unwrap()])),
        2
    );
    assert_eq!(
        code(&newtonpoly(&["verify", "/nonexistent/corpus.toml"])),
        6
    );
    // a case that cannot be analysed is a failing row, not an abort
    let f =
        corpus_file("[[case]]\nname = \"bad\"\npoly = \"x^2 +\"\n[case.expect]\ngrowth = \"1\"\n");
    let out = newtonpoly(&["verify", f.path().to_str().unwrap()]);
    assert_eq!(code(&out), 1);
    assert!(String::from_utf8_lossy(&out.stdout).contains("parse error"));
}

#[test]
fn measured_cases_run_unless_quick() {
    let f = corpus_file(
        r#"
[[case]]
name = "Fresnel"
poly = "x^2"
oscillation = { lambda_from = 1e2, lambda_to = 1e4 }
sweep = { eps_points = 8, samples = 1000, shells = 8 }
[case.expect]
measured_growth = 0.5
measured_decay = 0.5
transfer = "MATCH"
"#,
    );
    let path = f.path().to_str().unwrap();
    let full: serde_json::Value =
        serde_json::from_slice(&newtonpoly(&["verify", path, "--format", "json"]).stdout).unwrap();
    assert_eq!(full["passed"], 3);
    let quick: serde_json::Value = serde_json::from_slice(
        &newtonpoly(&["verify", path, "--quick", "--format", "json"]).stdout,
    )
    .unwrap();
    assert_eq!(quick["skipped"], 3);
    assert_eq!(quick["failed"], 0);
}
