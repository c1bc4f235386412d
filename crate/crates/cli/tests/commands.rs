mod common;

use common::*;

#[test]
fn analyze_worked_examples() {
    let r = json(&newtonpoly(&["analyze", "x^4 + x^2 + y^2 + z^2"]));
    assert_eq!(r["polyhedron"]["d"], "2/3");
    assert_eq!(r["prediction"]["kind"], "exact");
    assert_eq!(r["prediction"]["growth_exponent"]["lower"], "3/2");
    assert_eq!(r["prediction"]["growth_exponent"]["upper"], "3/2");
    assert_eq!(r["nondegeneracy"]["nondegenerate"], true);

    let r = json(&newtonpoly(&["analyze", "x*y"]));
    assert_eq!(r["polyhedron"]["d"], "1");
    assert_eq!(r["polyhedron"]["k"], 0);
    assert_eq!(
        r["polyhedron"]["central_face"]["exponents"],
        serde_json::json!([[1, 1]])
    );
    assert_eq!(r["prediction"]["growth_exponent"]["lower"], "1");
    assert_eq!(
        r["prediction"]["log_multiplicity"],
        serde_json::json!({"lo": 1, "hi": 1})
    );
    assert!(!r["prediction"]["theorem_trail"]
        .as_array()
        .unwrap()
        .is_empty());
}

#[test]
fn variables_and_dimension() {
    let r = json(&newtonpoly(&["analyze", "a^2 + b^4", "--vars", "a,b"]));
    assert_eq!(r["input"]["variables"], serde_json::json!(["a", "b"]));
    assert_eq!(r["input"]["canonical"], "b^4 + a^2");
    let r = json(&newtonpoly(&["analyze", "x^2", "--dim", "2"]));
    assert_eq!(r["polyhedron"]["n"], 2);
    assert_eq!(r["input"]["terms"], serde_json::json!({"2,0": "1"}));
}

#[test]
fn analyze_csv_lists_faces() {
    let out = newtonpoly(&["analyze", "x^2 + y^2 - z^2", "--format", "csv"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    let mut rows = csv::Reader::from_reader(text.as_bytes());
    assert_eq!(rows.headers().unwrap().iter().next(), Some("face"));
    assert_eq!(rows.records().count(), 7);
}

#[test]
fn measure_reports_fit_and_consistency() {
    let mut args = vec![
        "measure",
        "x^2*y^2",
        "--eps-from",
        "1e-3",
        "--eps-to",
        "1e-8",
    ];
    args.extend_from_slice(&["--samples", "20000", "--shells", "16", "--eps-points", "8"]);
    let r = json(&newtonpoly(&args));
    let alpha = r["growth"]["fit"]["alpha"].as_f64().unwrap();
    assert!((alpha - 0.5).abs() < 0.05, "{alpha}");
    assert_eq!(r["growth"]["fit"]["beta"], 1.0);
    assert_eq!(r["growth"]["check"]["verdict"], "CONSISTENT");
    assert_eq!(r["growth"]["sweep"]["points"].as_array().unwrap().len(), 8);
}

#[test]
fn inconsistent_measurements_are_data() {
    // a loose window on a log-corrected case, with a tolerance too tight to meet
    let mut args = vec!["measure", "x*y", "--tolerance", "0.0001"];
    args.extend_from_slice(QUICK_SWEEP);
    let out = newtonpoly(&args);
    let r = json(&out);
    assert_eq!(r["growth"]["check"]["verdict"], "INCONSISTENT");
}

#[test]
fn measure_writes_sweep_tables() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("r.json");
    let mut args = vec!["measure", "x^2 + y^4", "--out", out.to_str().unwrap()];
    args.extend_from_slice(QUICK_SWEEP);
    let o = newtonpoly(&args);
    assert_eq!(code(&o), 0);
    assert!(o.stdout.is_empty());
    let r: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let csv_path = r["growth"]["csv"].as_str().unwrap();
    let table = std::fs::read_to_string(csv_path).unwrap();
    assert!(table.starts_with("eps,estimate,stderr,shells_used"));
    assert_eq!(table.lines().count(), 7);

    let mut args = vec!["measure", "x^2 + y^4", "--format", "csv"];
    args.extend_from_slice(QUICK_SWEEP);
    let o = newtonpoly(&args);
    assert_eq!(String::from_utf8(o.stdout).unwrap(), table);
}

#[test]
fn oscillate_examples() {
    let r = json(&newtonpoly(&["oscillate", "x^2", "--dim", "1"]));
    let alpha = r["oscillation"]["fit"]["alpha"].as_f64().unwrap();
    assert!((alpha - 0.5).abs() < 0.02, "{alpha}");
    assert_eq!(r["oscillation"]["transfer"]["verdict"], "MATCH");

    let r = json(&newtonpoly(&[
        "oscillate",
        "x^2 + y^2 - z^2",
        "--lambda-from",
        "100",
        "--lambda-to",
        "10000",
    ]));
    assert_eq!(r["oscillation"]["transfer"]["verdict"], "EXPECTED-MISMATCH");
    assert_eq!(r["prediction"]["oscillation_status"], "unknown");
    let alpha = r["oscillation"]["fit"]["alpha"].as_f64().unwrap();
    assert!((alpha - 1.5).abs() < 0.05, "{alpha}");

    let o = newtonpoly(&["oscillate", "x^2", "--dim", "1", "--format", "csv"]);
    let text = String::from_utf8(o.stdout).unwrap();
    assert!(text.starts_with("lambda,re,im,modulus,error,reliable,evaluations"));
    assert_eq!(text.lines().count(), 11);
}

#[test]
fn worker_count_does_not_change_results() {
    let mut args = vec!["measure", "x^2 - y^3 + x*y*z"];
    args.extend_from_slice(QUICK_SWEEP);
    let run = |w: &str| {
        std::process::Command::new(env!("CARGO_BIN_EXE_newtonpoly"))
            .args(&args)
            .env("NEWTONPOLY_WORKERS", w)
            .output()
            .unwrap()
            .stdout
    };
    let one = run("1");
    assert!(!one.is_empty());
    assert_eq!(one, run("3"));
    assert_eq!(one, run("not-a-number"));
}
