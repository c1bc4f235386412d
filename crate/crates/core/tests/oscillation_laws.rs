mod common;

use common::*;
use newtonpoly::measure::{FitKind, FitResult, PinnedFit};
use newtonpoly::oscillation::{
    transfer_check, GrowthEvidence, OscSweep, Verdict, TRANSFER_TOLERANCE,
};
use newtonpoly::{oscillatory_integral, predict::predict_oscillation, predict_growth};
use std::f64::consts::PI;

fn osc() -> OscSweep {
    OscSweep::default()
}

#[test]
fn fresnel_asymptotics() {
    let p = poly("x^2", 1);
    for lambda in [1e3, 1e4] {
        let v = oscillatory_integral(&p, lambda, &osc()).unwrap();
        let amp = (PI / lambda).sqrt();
        let (re, im) = (amp * (PI / 4.0).cos(), amp * (PI / 4.0).sin());
        assert!(v.reliable);
        assert!(
            ((v.re - re).powi(2) + (v.im - im).powi(2)).sqrt() < 2e-2 * amp,
            "{v:?}"
        );
    }
}

#[test]
fn negating_the_phase_conjugates() {
    for (text, n) in [("x^2 + y^4", 2), ("x^3 - x*y^2", 2), ("x^2 + y^2 - z^2", 3)] {
        let p = poly(text, n);
        let neg = p.scale(&newtonpoly::rational::int(-1));
        let a = oscillatory_integral(&p, 200.0, &osc()).unwrap();
        let b = oscillatory_integral(&neg, 200.0, &osc()).unwrap();
        assert!(
            (a.re - b.re).abs() < 1e-10 && (a.im + b.im).abs() < 1e-10,
            "{text}"
        );
        assert!((a.modulus - b.modulus).abs() < 1e-10);
    }
}

#[test]
fn constant_shift_rotates_the_phase() {
    let p = poly("x^2 + y^4", 2);
    let shifted = poly("x^2 + y^4 + 1/2", 2);
    let lambda = 300.0;
    let a = oscillatory_integral(&p, lambda, &osc()).unwrap();
    let b = oscillatory_integral(&shifted, lambda, &osc()).unwrap();
    let (c, s) = ((lambda * 0.5).cos(), (lambda * 0.5).sin());
    assert!((b.re - (a.re * c - a.im * s)).abs() < 1e-9);
    assert!((b.im - (a.re * s + a.im * c)).abs() < 1e-9);
}

#[test]
fn exhausted_budget_is_flagged() {
    let p = poly("x^2 + y^2 - z^2 + x*y*z", 3);
    let cfg = OscSweep {
        budget: 1_000,
        ..osc()
    };
    let v = oscillatory_integral(&p, 1e3, &cfg).unwrap();
    assert!(!v.reliable);
    let ok = oscillatory_integral(&poly("x^2", 1), 1e3, &cfg).unwrap();
    assert!(ok.evaluations <= 1_000 || !ok.reliable);
    let full = oscillatory_integral(&p, 50.0, &osc()).unwrap();
    assert!(full.reliable && full.evaluations > 1_000);
}

#[test]
fn invalid_configs_are_rejected() {
    let p = poly("x^2 + y^2", 2);
    let bad = OscSweep {
        lambdas: vec![10.0, 5.0],
        ..osc()
    };
    assert!(bad.validate(2).is_err());
    let radial = OscSweep {
        radial: vec![vec![0]],
        ..osc()
    };
    assert!(radial.validate(2).is_err());
    assert!(poly("x^2", 1).evaluate(&[1.0]).is_ok());
    // negative frequencies are the conjugate integral
    let a = oscillatory_integral(&p, -50.0, &osc()).unwrap();
    let b = oscillatory_integral(&p, 50.0, &osc()).unwrap();
    assert!((a.re - b.re).abs() < 1e-12 && (a.im + b.im).abs() < 1e-12);
}

fn synthetic(alpha: f64) -> FitResult {
    let free = PinnedFit {
        beta: 0.0,
        alpha,
        alpha_stderr: 0.0,
        intercept: 0.0,
        residual: 0.0,
    };
    FitResult {
        kind: FitKind::Decay,
        alpha,
        alpha_stderr: 0.0,
        beta: 0.0,
        intercept: 0.0,
        residual: 0.0,
        beta_pinned: true,
        free: free.clone(),
        pinned: vec![free],
        dropped: 0,
        curvature: 0.0,
        measurements: Vec::new(),
        notes: Vec::new(),
    }
}

#[test]
fn one_way_bound_and_verdicts() {
    let p = poly("x^4 + x^2 + y^2 + z^2", 3);
    let pred = predict_oscillation(&p, &predict_growth(&p).unwrap());
    let growth = synthetic(1.5);
    let r = transfer_check(
        GrowthEvidence::Fit(&growth),
        &synthetic(1.48),
        &pred,
        TRANSFER_TOLERANCE,
    );
    assert_eq!(r.verdict, Verdict::Match);
    assert!(r.one_way_ok);
    let r = transfer_check(
        GrowthEvidence::Fit(&growth),
        &synthetic(1.0),
        &pred,
        TRANSFER_TOLERANCE,
    );
    assert_eq!(r.verdict, Verdict::Violation);
    assert!(!r.one_way_ok);
    // faster decay than growth never breaks the one-way bound
    let r = transfer_check(
        GrowthEvidence::Prediction(&pred),
        &synthetic(2.0),
        &pred,
        TRANSFER_TOLERANCE,
    );
    assert!(r.one_way_ok);
    assert_eq!(r.verdict, Verdict::Violation);
}
