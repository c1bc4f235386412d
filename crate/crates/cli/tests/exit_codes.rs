mod common;

use common::*;

#[test]
fn parse_errors_exit_2() {
    for args in [
        vec!["analyze", ""],
        vec!["analyze", "x^2 +"],
        vec!["analyze", "x^2 + q", "--vars", "x,y"],
        vec!["analyze", "x^2", "--vars", "x,x"],
    ] {
        let out = newtonpoly(&args);
        assert_eq!(code(&out), 2, "{args:?}");
        assert!(String::from_utf8_lossy(&out.stderr).contains("parse error"));
    }
}

#[test]
fn unsupported_dimensions_exit_3() {
    assert_eq!(code(&newtonpoly(&["analyze", "x^2", "--dim", "5"])), 3);
    assert_eq!(code(&newtonpoly(&["analyze", "x^2", "--dim", "0"])), 3);
    assert_eq!(code(&newtonpoly(&["analyze", "a*b + c*d + e^2"])), 3);
    assert_eq!(
        code(&newtonpoly(&["analyze", "x^2", "--vars", "x,y,z,w,v"])),
        3
    );
}

#[test]
fn config_errors_exit_4() {
    assert_eq!(
        code(&newtonpoly(&["measure", "x^2", "--eps-points", "3"])),
        4
    );
    assert_eq!(code(&newtonpoly(&["measure", "x^2", "--eta", "2"])), 4);
    assert_eq!(code(&newtonpoly(&["measure", "x^2", "--eps-from=-1"])), 4);
    assert_eq!(
        code(&newtonpoly(&["oscillate", "x^2 + y^4", "--radial", "x,y"])),
        4
    );
    assert_eq!(
        code(&newtonpoly(&["oscillate", "x^2 + y^2", "--radial", "x,q"])),
        4
    );
    assert_eq!(
        code(&newtonpoly(&[
            "oscillate",
            "x^2",
            "--lambda-from",
            "10",
            "--lambda-to",
            "1"
        ])),
        4
    );
    assert_eq!(
        code(&newtonpoly(&[
            "analyze", "x^2", "--vars", "x,y", "--dim", "3"
        ])),
        4
    );
}

#[test]
fn inputs_outside_the_assumptions_exit_5() {
    let out = newtonpoly(&["analyze", "1 + x^2"]);
    assert_eq!(code(&out), 5);
    assert!(String::from_utf8_lossy(&out.stderr).contains("nonzero"));
    assert_eq!(code(&newtonpoly(&["analyze", "x - x"])), 5);
}

#[test]
fn unwritable_output_exits_6() {
    assert_eq!(
        code(&newtonpoly(&[
            "analyze",
            "x^2",
            "--out",
            "/nonexistent/dir/r.json"
        ])),
        6
    );
}

#[test]
fn usage_errors_come_from_clap() {
    assert_eq!(code(&newtonpoly(&["analyze"])), 2);
    assert_eq!(code(&newtonpoly(&["frobnicate"])), 2);
    assert_eq!(code(&newtonpoly(&["--version"])), 0);
}
