#![allow(dead_code)]

use std::process::{Command, Output};

pub fn newtonpoly(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_newtonpoly"))
        .args(args)
        .env("RUST_LOG", "error")
        .output()
        .expect("binary runs")
}

pub fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

pub fn json(out: &Output) -> serde_json::Value {
    assert_eq!(
        code(out),
        0,
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is json")
}

/// Small sampling settings for quick sweeps.
pub const QUICK_SWEEP: &[&str] = &["--samples", "4000", "--shells", "10", "--eps-points", "6"];
