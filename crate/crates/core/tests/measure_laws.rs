mod common;

use common::*;
use newtonpoly::measure::{
    fit_power_law, geometric, sublevel_sweep, sublevel_volume, Estimator, FitKind, Measurement,
    SweepConfig, Weight,
};
use proptest::prelude::*;

fn cfg(samples: usize, seed: u64) -> SweepConfig {
    SweepConfig {
        eps: geometric(1e-2, 1e-5, 7),
        samples,
        shells: 16,
        seed,
        ..SweepConfig::default()
    }
}

fn in_pool<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> T {
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .unwrap()
        .install(f)
}

#[test]
fn results_do_not_depend_on_thread_count() {
    for est in [Estimator::Line, Estimator::Indicator] {
        let p = poly("x^2 - y^3 + x*y*z", 3);
        let c = SweepConfig {
            estimator: est,
            ..cfg(20_000, 9)
        };
        let one = in_pool(1, || sublevel_sweep(&p, &c).unwrap());
        let three = in_pool(3, || sublevel_sweep(&p, &c).unwrap());
        assert_eq!(one, three, "{est:?}");
    }
}

#[test]
fn hyperbola_matches_closed_form() {
    // |xy| < eps over [-eta, eta]^2 has area 4 eps (1 + ln(eta^2 / eps))
    let p = poly("x*y", 2);
    let c = cfg(40_000, 3);
    let r = sublevel_sweep(&p, &c).unwrap();
    for pt in &r.points {
        let want = 4.0 * pt.eps * (1.0 + (0.25 / pt.eps).ln());
        assert!(
            (pt.estimate - want).abs() <= 3.0 * pt.stderr + 1e-9 * want,
            "{} vs {want} (se {})",
            pt.estimate,
            pt.stderr
        );
    }
}

#[test]
fn ball_volume_in_three_dimensions() {
    let p = poly("x^2 + y^2 + z^2", 3);
    for est in [Estimator::Line, Estimator::Indicator] {
        let c = SweepConfig {
            estimator: est,
            ..cfg(40_000, 4)
        };
        let (v, se) = sublevel_volume(&p, 1e-3, &c).unwrap();
        let want = 4.0 / 3.0 * std::f64::consts::PI * 1e-3f64.powf(1.5);
        assert!((v - want).abs() <= 3.5 * se, "{est:?} {v} vs {want} ({se})");
    }
}

#[test]
fn stderr_shrinks_with_samples() {
    let p = poly("x^2 - y^2 + z^3", 3);
    let c = SweepConfig {
        estimator: Estimator::Indicator,
        ..cfg(10_000, 5)
    };
    let (_, a) = sublevel_volume(&p, 1e-3, &c).unwrap();
    let c4 = SweepConfig {
        samples: 40_000,
        ..c
    };
    let (_, b) = sublevel_volume(&p, 1e-3, &c4).unwrap();
    let ratio = a / b;
    assert!((1.6..2.5).contains(&ratio), "ratio {ratio}");
}

#[test]
fn squaring_doubles_the_level() {
    // {|S^2| < eps^2} = {|S| < eps}, so the line estimator sees identical sets
    let p = poly("x^2 + y^2 - z^2", 3);
    let mut c = cfg(5_000, 6);
    let a = sublevel_sweep(&p, &c).unwrap();
    c.eps = c.eps.iter().map(|e| e * e).collect();
    let b = sublevel_sweep(&p.pow(2), &c).unwrap();
    for (x, y) in a.points.iter().zip(&b.points) {
        assert!(
            (x.estimate - y.estimate).abs() <= 1e-6 * x.estimate + 3.0 * (x.stderr + y.stderr),
            "{x:?} {y:?}"
        );
    }
}

#[test]
fn bump_weight_scales_exponent_not() {
    let p = poly("x^2 + y^4", 2);
    let c = SweepConfig {
        weight: Weight::SmoothBump,
        eps: geometric(1e-3, 1e-8, 8),
        ..cfg(20_000, 8)
    };
    let r = sublevel_sweep(&p, &c).unwrap();
    let data: Vec<Measurement> = r
        .points
        .iter()
        .map(|p| Measurement {
            x: p.eps,
            value: p.estimate,
            stderr: p.stderr,
        })
        .collect();
    let fit = fit_power_law(FitKind::Growth, &data, 1).unwrap();
    assert!((fit.alpha - 0.75).abs() < 0.03, "{}", fit.alpha);
}

#[test]
fn fit_recovers_synthetic_laws() {
    for (alpha, beta) in [(0.5, 0.0), (1.0, 1.0), (0.75, 2.0)] {
        let data: Vec<Measurement> = geometric(1e-2, 1e-9, 12)
            .into_iter()
            .map(|e| Measurement {
                x: e,
                value: 3.0 * e.powf(alpha) * (1.0 / e).ln().powf(beta),
                stderr: 0.0,
            })
            .collect();
        let fit = fit_power_law(FitKind::Growth, &data, 2).unwrap();
        assert_eq!(fit.beta, beta);
        assert!(
            (fit.alpha - alpha).abs() < 1e-6,
            "{alpha} {beta}: {}",
            fit.alpha
        );
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn volumes_are_monotone_in_eps(p in phase_strategy(2, 4, 4), seed in 0u64..1000) {
        let r = sublevel_sweep(&p, &cfg(2_000, seed)).unwrap();
        for w in r.points.windows(2) {
            prop_assert!(w[1].estimate <= w[0].estimate + 1e-15);
        }
        let total = 1.0;
        prop_assert!(r.points.iter().all(|pt| pt.estimate >= 0.0 && pt.estimate <= total + 1e-12));
    }

    #[test]
    fn sweeps_are_reproducible(p in phase_strategy(3, 4, 3), seed in 0u64..1000) {
        let c = cfg(1_000, seed);
        prop_assert_eq!(sublevel_sweep(&p, &c).unwrap(), sublevel_sweep(&p, &c).unwrap());
    }
}
