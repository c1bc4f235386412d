//! Acceptance run: one PASS/FAIL line per criterion. Set `ACCEPTANCE_STRICT` to turn any FAIL
//! into a nonzero exit.
//!
//! Growth sweeps use a deeper eps window than the library default and the oscillatory family
//! uses a deeper lambda window; both are the asymptotic windows the fits need to settle.

use std::collections::BTreeMap;
use std::time::Instant;

use newtonpoly::face::Certainty;
use newtonpoly::maps::{check_lemma26, vertex_cone_maps, MonomialMap};
use newtonpoly::measure::lemma31::volume_terms;
use newtonpoly::measure::{
    envelope_check, geometric, monomial_box_volume_exact, sublevel_sweep, sweep_and_fit,
    EnvelopeCase, Estimator, Weight,
};
use newtonpoly::oscillation::TRANSFER_TOLERANCE;
use newtonpoly::predict::predict_growth;
use newtonpoly::rational::{int, q, to_f64};
use newtonpoly::{
    decay_sweep_and_fit, parse_poly_infer, predict_oscillation, transfer_check, FitResult,
    GrowthEvidence, IndexPrediction, MultiplicityRange, NewtonPolyhedron, OscSweep, PredictionKind,
    Rational, SparsePoly, SweepConfig, Verdict,
};
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const GROWTH_TOL: f64 = 0.05;
const DECAY_TOL: f64 = 0.10;

struct Criterion {
    id: usize,
    title: &'static str,
    failures: Vec<String>,
    lines: Vec<String>,
}

impl Criterion {
    fn new(id: usize, title: &'static str) -> Self {
        Criterion {
            id,
            title,
            failures: Vec::new(),
            lines: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl Into<String>) {
        let what = what.into();
        self.lines
            .push(format!("{} {what}", if ok { "ok  " } else { "FAIL" }));
        if !ok {
            self.failures.push(what);
        }
    }

    fn note(&mut self, what: impl Into<String>) {
        self.lines.push(format!("     {}", what.into()));
    }

    fn finish(self, started: Instant) -> bool {
        for l in &self.lines {
            println!("    {l}");
        }
        let pass = self.failures.is_empty();
        println!(
            "{} criterion {}: {} ({:.1}s{})",
            if pass { "PASS" } else { "FAIL" },
            self.id,
            self.title,
            started.elapsed().as_secs_f64(),
            if pass {
                String::new()
            } else {
                format!(", {} failed checks", self.failures.len())
            }
        );
        pass
    }
}

fn poly(text: &str, n: usize) -> SparsePoly {
    parse_poly_infer(text, n)
        .unwrap_or_else(|e| panic!("{text}: {e}"))
        .0
}

fn growth_config() -> SweepConfig {
    SweepConfig {
        eps: geometric(1e-4, 1e-9, 11),
        shells: 30,
        ..SweepConfig::default()
    }
}

/// Growth fits, memoised so later criteria can reuse earlier sweeps.
#[derive(Default)]
struct Lab {
    fits: BTreeMap<String, FitResult>,
    predictions: BTreeMap<String, IndexPrediction>,
}

impl Lab {
    fn fit(&mut self, text: &str, n: usize) -> FitResult {
        if let Some(f) = self.fits.get(text) {
            return f.clone();
        }
        let (_, f) = sweep_and_fit(&poly(text, n), &growth_config()).expect("growth sweep");
        self.fits.insert(text.to_string(), f.clone());
        f
    }

    fn predict(&mut self, text: &str, n: usize) -> IndexPrediction {
        if let Some(p) = self.predictions.get(text) {
            return p.clone();
        }
        let p = predict_growth(&poly(text, n)).expect("prediction");
        self.predictions.insert(text.to_string(), p.clone());
        p
    }
}

fn describe_fit(f: &FitResult) -> String {
    let pins: Vec<String> = f
        .pinned
        .iter()
        .map(|p| format!("b={} a={:.4}", p.beta, p.alpha))
        .collect();
    format!("alpha {:.4} beta {} [{}]", f.alpha, f.beta, pins.join(", "))
}

fn stability_family(lab: &mut Lab) -> bool {
    let t0 = Instant::now();
    let mut c = Criterion::new(1, "stability family U_t");
    let cases = [
        ("x^4 + x^2 + y^2 + z^2", 1.50),
        ("x^4 + y^2 + z^2", 1.25),
        ("x^4 - x^2 + y^2 + z^2", 1.00),
    ];
    let p1 = lab.predict(cases[0].0, 3);
    c.check(
        p1.kind == PredictionKind::Exact
            && p1.growth_exponent.exact_value() == Some(&q(3, 2))
            && p1.log_multiplicity == Some(MultiplicityRange::exact(0)),
        format!(
            "U_1 predicted {} ({:?}), multiplicity {:?}",
            p1.growth_exponent, p1.kind, p1.log_multiplicity
        ),
    );
    let p0 = lab.predict(cases[1].0, 3);
    c.check(
        p0.kind == PredictionKind::Exact
            && p0.growth_exponent.exact_value() == Some(&q(5, 4))
            && p0.log_multiplicity == Some(MultiplicityRange::exact(0)),
        format!(
            "U_0 predicted {} ({:?}), multiplicity {:?}",
            p0.growth_exponent, p0.kind, p0.log_multiplicity
        ),
    );
    let pm = lab.predict(cases[2].0, 3);
    c.check(
        // the upper end is open: a torus zero with pointwise index below 1/d excludes 1/d itself
        pm.kind == PredictionKind::Bracket
            && pm.growth_exponent.lower == Some(int(1))
            && !pm.growth_exponent.lower_strict
            && pm.growth_exponent.upper == Some(q(3, 2)),
        format!("U_-1 predicted {} ({:?})", pm.growth_exponent, pm.kind),
    );
    for (text, want) in cases {
        let s = Instant::now();
        let f = lab.fit(text, 3);
        c.check(
            (f.alpha - want).abs() <= GROWTH_TOL && f.beta.abs() <= 0.3,
            format!(
                "{text}: {} against {want} ({:.1}s)",
                describe_fit(&f),
                s.elapsed().as_secs_f64()
            ),
        );
    }
    c.finish(t0)
}

fn oscillatory_family() -> bool {
    let t0 = Instant::now();
    let mut c = Criterion::new(2, "oscillatory family V_t with radial (y,z)");
    let cfg = OscSweep {
        lambdas: geometric(5e2, 5e4, 10),
        radial: vec![vec![1, 2]],
        ..OscSweep::default()
    };
    let cases = [
        ("(x^4 + x^2 + y^2 + z^2)^2", 0.75),
        ("(x^4 + y^2 + z^2)^2", 0.625),
        ("(x^4 - x^2 + y^2 + z^2)^2", 0.50),
    ];
    for (text, want) in cases {
        let s = Instant::now();
        let p = poly(text, 3);
        let growth = predict_growth(&p).expect("prediction");
        let osc = predict_oscillation(&p, &growth);
        let (sweep, fit) = decay_sweep_and_fit(&p, &cfg).expect("decay sweep");
        let report = transfer_check(
            GrowthEvidence::Prediction(&osc),
            &fit,
            &osc,
            TRANSFER_TOLERANCE,
        );
        c.check(
            (fit.alpha - want).abs() <= DECAY_TOL,
            format!(
                "{text}: decay {} against {want}, {} reliable points ({:.1}s)",
                describe_fit(&fit),
                sweep.points.iter().filter(|v| v.reliable).count(),
                s.elapsed().as_secs_f64()
            ),
        );
        c.check(
            report.verdict == Verdict::Match && report.one_way_ok,
            format!(
                "{text}: growth prediction {}, sign {:?}, verdict {:?}",
                growth.growth_exponent, osc.phase_sign, report.verdict
            ),
        );
    }
    c.finish(t0)
}

fn worked_examples(lab: &mut Lab) -> bool {
    let t0 = Instant::now();
    let mut c = Criterion::new(3, "worked examples x^2+y^2-z^2 and x^4+y^4-z^4");

    let cone = "x^2 + y^2 - z^2";
    let p = poly(cone, 3);
    let np = NewtonPolyhedron::build(&p).unwrap();
    let d = np.central_face().d;
    c.check(d == q(2, 3), format!("{cone}: d = {d}"));
    let f = lab.fit(cone, 3);
    c.check(
        (f.alpha - 1.0).abs() <= GROWTH_TOL,
        format!("{cone}: growth {}", describe_fit(&f)),
    );
    let growth = lab.predict(cone, 3);
    let osc_pred = predict_oscillation(&p, &growth);
    let (_, osc) = decay_sweep_and_fit(&p, &OscSweep::default()).expect("decay sweep");
    let report = transfer_check(GrowthEvidence::Fit(&f), &osc, &osc_pred, TRANSFER_TOLERANCE);
    c.check(
        report.verdict == Verdict::ExpectedMismatch,
        format!(
            "{cone}: decay alpha {:.4}, status {:?}, verdict {:?}",
            osc.alpha, osc_pred.oscillation_status, report.verdict
        ),
    );

    let quartic = "x^4 + y^4 - z^4";
    let p = poly(quartic, 3);
    let d = NewtonPolyhedron::build(&p).unwrap().central_face().d;
    c.check(d == q(4, 3), format!("{quartic}: d = {d}"));
    let f = lab.fit(quartic, 3);
    c.check(
        (f.alpha - 0.75).abs() <= GROWTH_TOL,
        format!("{quartic}: growth {}", describe_fit(&f)),
    );
    c.finish(t0)
}

struct Truth {
    text: &'static str,
    exponent: Rational,
    logs: u32,
    /// Whether the predictor certifies the value or only bounds it from above.
    exact: bool,
    derivation: &'static str,
}

/// Leading exponent and log power of `|{x in (0,1)^n : x^m < delta}|`.
fn monomial_truth(m: &[i64]) -> (Rational, u32) {
    let m: Vec<Rational> = m.iter().map(|&v| int(v)).collect();
    let (e, l) = volume_terms(&m).unwrap().leading().unwrap();
    (e, l as u32)
}

fn planar_truths() -> Vec<Truth> {
    let xy = monomial_truth(&[1, 1]);
    let x2y2 = monomial_truth(&[2, 2]);
    let quartic = monomial_truth(&[4, 0]);
    vec![
        Truth {
            text: "x^2 + y^2",
            exponent: int(1),
            logs: 0,
            exact: true,
            derivation: "disc area pi eps",
        },
        Truth {
            text: "x*y",
            exponent: xy.0.clone(),
            logs: xy.1,
            exact: true,
            derivation: "monomial box volume m=(1,1)",
        },
        Truth {
            text: "x^2*y^2",
            exponent: x2y2.0,
            logs: x2y2.1,
            exact: true,
            derivation: "monomial box volume m=(2,2)",
        },
        Truth {
            text: "x^2 - y^2",
            exponent: xy.0.clone(),
            logs: xy.1,
            exact: true,
            derivation: "u=x-y, v=x+y turns it into uv",
        },
        Truth {
            text: "(x - y)^4",
            exponent: quartic.0,
            logs: quartic.1,
            exact: false,
            derivation: "u=x-y turns it into u^4",
        },
        Truth {
            // homogeneous of degree 3 with simple real zero lines: V(eps) = eps^(2/3) V(1)
            text: "x^3 + y^3",
            exponent: q(2, 3),
            logs: 0,
            exact: true,
            derivation: "homogeneous scaling, degree 3",
        },
        Truth {
            // weights (1/2, 1/4), no real zero off the origin: V(eps) = eps^(3/4) V(1)
            text: "x^2 + y^4",
            exponent: q(3, 4),
            logs: 0,
            exact: true,
            derivation: "quasi-homogeneous scaling, weights (1/2, 1/4)",
        },
    ]
}

fn planar_trichotomy(lab: &mut Lab) -> bool {
    let t0 = Instant::now();
    let mut c = Criterion::new(4, "planar trichotomy corpus");
    for t in planar_truths() {
        let pred = lab.predict(t.text, 2);
        let agrees = if t.exact {
            pred.kind == PredictionKind::Exact
                && pred.growth_exponent.exact_value() == Some(&t.exponent)
                && pred.log_multiplicity == Some(MultiplicityRange::exact(t.logs))
                && pred.certainty == Certainty::Exact
        } else {
            pred.kind == PredictionKind::UpperBoundOnly
                && pred.growth_exponent.upper_strict
                && pred.growth_exponent.contains(&t.exponent)
        };
        c.check(
            agrees,
            format!(
                "{}: predicted {} ({:?}, multiplicity {:?}); truth {} log^{} from {}",
                t.text,
                pred.growth_exponent,
                pred.kind,
                pred.log_multiplicity,
                t.exponent,
                t.logs,
                t.derivation
            ),
        );
        let f = lab.fit(t.text, 2);
        let want = to_f64(&t.exponent);
        c.check(
            (f.alpha - want).abs() <= GROWTH_TOL,
            format!("{}: measured {}", t.text, describe_fit(&f)),
        );
        if t.logs == 1 {
            let r0 = f.pinned_for(0).map(|p| p.residual).unwrap_or(f64::NAN);
            let r1 = f.pinned_for(1).map(|p| p.residual).unwrap_or(f64::NAN);
            c.check(
                f.beta == 1.0,
                format!(
                    "{}: pinned fit selects beta {} (residuals b=0 {r0:.3e}, b=1 {r1:.3e})",
                    t.text, f.beta
                ),
            );
        }
    }
    c.finish(t0)
}

fn pick(rng: &mut ChaCha8Rng, pool: &[Rational]) -> Rational {
    pool[rng.gen_range(0..pool.len())].clone()
}

/// Random exponent vectors meeting each case's hypothesis on `M = max m_i`.
fn envelope_vectors(case: EnvelopeCase, count: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<Rational>> {
    let quarters: Vec<Rational> = (0..4).map(|i| q(i, 4)).collect();
    let halves: Vec<Rational> = vec![int(0), q(1, 2), int(1), q(3, 2), int(2), int(3)];
    let mut out = Vec::new();
    while out.len() < count {
        let n = rng.gen_range(1..=4);
        let m: Vec<Rational> = match case {
            EnvelopeCase::A => (0..n).map(|_| int(rng.gen_range(0..=4))).collect(),
            EnvelopeCase::B => (0..n).map(|_| pick(rng, &quarters)).collect(),
            EnvelopeCase::C => {
                let mut m: Vec<Rational> = (0..n)
                    .map(|_| {
                        if rng.gen_bool(0.4) {
                            Rational::one()
                        } else {
                            pick(rng, &quarters)
                        }
                    })
                    .collect();
                let i = rng.gen_range(0..n);
                m[i] = Rational::one();
                m
            }
            EnvelopeCase::D => (0..n).map(|_| pick(rng, &halves)).collect(),
        };
        let big = m.iter().max().cloned().unwrap();
        let ok = match case {
            EnvelopeCase::A => !big.is_zero(),
            EnvelopeCase::B => !big.is_zero() && big < Rational::one(),
            EnvelopeCase::C => big == Rational::one(),
            EnvelopeCase::D => big > Rational::one(),
        };
        if ok {
            out.push(m);
        }
    }
    out
}

fn fmt_m(m: &[Rational]) -> String {
    let parts: Vec<String> = m.iter().map(newtonpoly::rational::fmt).collect();
    format!("({})", parts.join(","))
}

fn envelope_suite() -> bool {
    let t0 = Instant::now();
    let mut c = Criterion::new(5, "monomial box oracle and envelopes");
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let deltas = geometric(1e-2, 1e-8, 13);
    let mut case_a = Vec::new();
    for case in [
        EnvelopeCase::A,
        EnvelopeCase::B,
        EnvelopeCase::C,
        EnvelopeCase::D,
    ] {
        let vs = envelope_vectors(case, 20, &mut rng);
        let mut worst: f64 = 0.0;
        let mut bad = Vec::new();
        let mut by_dim = [(0usize, 0usize); 5];
        for m in &vs {
            let r = envelope_check(m, &deltas, case).expect("envelope");
            worst = worst.max(r.drift);
            by_dim[m.len()].0 += 1;
            if !r.pass {
                by_dim[m.len()].1 += 1;
                bad.push(format!(
                    "{} drift {:.3} ratio [{:.3e}, {:.3e}]",
                    fmt_m(m),
                    r.drift,
                    r.inf,
                    r.sup
                ));
            }
        }
        let dims: Vec<String> = (1..=4)
            .filter(|&n| by_dim[n].0 > 0)
            .map(|n| format!("n={n}: {} of {} over", by_dim[n].1, by_dim[n].0))
            .collect();
        c.check(
            bad.is_empty(),
            format!(
                "case {case:?}: 20 vectors, largest last-decade drift {:.4} ({})",
                worst,
                dims.join(", ")
            ),
        );
        for b in bad {
            c.note(b);
        }
        if case == EnvelopeCase::A {
            case_a = vs;
        }
    }

    // stratified sampling of |x^m| < delta on (-1, 1)^n against 2^n times the exact volume
    let mc_deltas = geometric(1e-2, 1e-8, 7);
    let cfg = SweepConfig {
        eta: 1.0,
        eps: mc_deltas.clone(),
        samples: 100_000,
        shells: 30,
        seed: 5,
        weight: Weight::Indicator,
        estimator: Estimator::Line,
        line_var: None,
    };
    let mut worst_z: f64 = 0.0;
    let mut misses = Vec::new();
    for m in &case_a {
        let exps: Vec<u32> = m.iter().map(|v| to_f64(v) as u32).collect();
        let p = SparsePoly::monomial(Rational::one(), exps);
        let sweep = sublevel_sweep(&p, &cfg).expect("sublevel sweep");
        for pt in &sweep.points {
            let exact = 2f64.powi(m.len() as i32) * monomial_box_volume_exact(m, pt.eps).unwrap();
            let z = if pt.stderr > 0.0 {
                (pt.estimate - exact).abs() / pt.stderr
            } else if (pt.estimate - exact).abs() <= 1e-12 * exact {
                0.0
            } else {
                f64::INFINITY
            };
            worst_z = worst_z.max(z);
            if z > 3.0 {
                misses.push(format!(
                    "{} at delta {:.1e}: {:.2} sigma",
                    fmt_m(m),
                    pt.eps,
                    z
                ));
            }
        }
    }
    c.check(
        misses.is_empty(),
        format!(
            "sampling agrees with the exact volume on {} vectors x {} deltas, worst {:.2} sigma",
            case_a.len(),
            mc_deltas.len(),
            worst_z
        ),
    );
    for m in misses {
        c.note(m);
    }
    c.finish(t0)
}

/// Random square nonnegative integer matrix, nonsingular.
fn random_matrix(n: usize, max: i64, rng: &mut ChaCha8Rng) -> Vec<Vec<Rational>> {
    loop {
        let m: Vec<Vec<Rational>> = (0..n)
            .map(|_| (0..n).map(|_| int(rng.gen_range(0..=max))).collect())
            .collect();
        if MonomialMap::new(m.clone()).is_ok() && (0..n).all(|j| m.iter().any(|r| !r[j].is_zero()))
        {
            return m;
        }
    }
}

/// `det(d x_i / d z_j)` for `x_i = z^{m_i}` by formal differentiation and cofactor expansion.
fn symbolic_jacobian(rows: &[Vec<u32>]) -> SparsePoly {
    let n = rows.len();
    let xs: Vec<SparsePoly> = rows
        .iter()
        .map(|r| SparsePoly::monomial(Rational::one(), r.clone()))
        .collect();
    let jac: Vec<Vec<SparsePoly>> = xs
        .iter()
        .map(|x| (0..n).map(|j| x.derivative(j).unwrap()).collect())
        .collect();
    fn det(m: &[Vec<SparsePoly>], nvars: usize) -> SparsePoly {
        if m.len() == 1 {
            return m[0][0].clone();
        }
        let mut total = SparsePoly::zero(nvars);
        for (j, entry) in m[0].iter().enumerate() {
            if entry.is_zero() {
                continue;
            }
            let minor: Vec<Vec<SparsePoly>> = m[1..]
                .iter()
                .map(|r| {
                    r.iter()
                        .enumerate()
                        .filter(|(c, _)| *c != j)
                        .map(|(_, v)| v.clone())
                        .collect()
                })
                .collect();
            let term = entry.mul(&det(&minor, nvars));
            total = if j % 2 == 0 {
                total.add(&term)
            } else {
                total.sub(&term)
            };
        }
        total
    }
    det(&jac, n)
}

fn corpus() -> Vec<(&'static str, usize)> {
    let mut v: Vec<(&'static str, usize)> = planar_truths().iter().map(|t| (t.text, 2)).collect();
    v.extend([
        ("x^4 + x^2 + y^2 + z^2", 3),
        ("x^4 + y^2 + z^2", 3),
        ("x^4 - x^2 + y^2 + z^2", 3),
        ("(x^4 + x^2 + y^2 + z^2)^2", 3),
        ("(x^4 + y^2 + z^2)^2", 3),
        ("(x^4 - x^2 + y^2 + z^2)^2", 3),
        ("x^2 + y^2 - z^2", 3),
        ("x^4 + y^4 - z^4", 3),
    ]);
    v
}

fn map_suite() -> bool {
    let t0 = Instant::now();
    let mut c = Criterion::new(6, "monomial map suite");
    let mut rng = ChaCha8Rng::seed_from_u64(26);

    let mut disagree = 0;
    for i in 0..500 {
        let n = 2 + i % 3;
        let raw = MonomialMap::new(random_matrix(n, 4, &mut rng)).unwrap();
        let map = raw.normalize_constant_jacobian().unwrap();
        let alpha: Vec<Rational> = (0..n)
            .map(|_| q(rng.gen_range(0..=12), rng.gen_range(1..=4)))
            .collect();
        let cramer = map.transform_exponent_cramer(&alpha);
        match map.transform_exponent_geometric(&alpha) {
            Ok(g) if g == cramer && map.constant_jacobian() => {}
            _ => disagree += 1,
        }
    }
    c.check(
        disagree == 0,
        format!("Cramer and geometric transforms: {disagree} of 500 disagree"),
    );

    let mut checked = 0;
    let mut failed = Vec::new();
    for (text, n) in corpus() {
        let np = NewtonPolyhedron::build(&poly(text, n)).unwrap();
        let central = np.central_face();
        for v in 0..np.vertices.len() {
            let maps = match vertex_cone_maps(&np, v) {
                Ok(m) => m,
                Err(e) => {
                    failed.push(format!("{text} vertex {:?}: {e}", np.vertices[v]));
                    continue;
                }
            };
            for cm in maps {
                checked += 1;
                match check_lemma26(&cm.map, np.vertex_face(v), &central, &np) {
                    Ok(r) if r.all_pass() => {}
                    Ok(r) => failed.push(format!(
                        "{text} vertex {:?}: {:?}",
                        np.vertices[v], r.clauses
                    )),
                    Err(e) => failed.push(format!("{text} vertex {:?}: {e}", np.vertices[v])),
                }
            }
        }
    }
    c.check(
        failed.is_empty() && checked > 0,
        format!("separating-hyperplane clauses a-d on {checked} vertex cone maps of the corpus"),
    );
    for f in failed {
        c.note(f);
    }

    let mut mismatches = 0;
    for i in 0..100 {
        let n = 2 + i % 3;
        let m = random_matrix(n, 3, &mut rng);
        let map = MonomialMap::new(m.clone()).unwrap();
        let rows: Vec<Vec<u32>> = m
            .iter()
            .map(|r| r.iter().map(|v| to_f64(v) as u32).collect())
            .collect();
        let sym = symbolic_jacobian(&rows);
        let e = map.jacobian_exponent();
        let ok = e.iter().all(|x| !x.is_negative()) && {
            let exps: Vec<u32> = e.iter().map(|x| to_f64(x) as u32).collect();
            sym == SparsePoly::monomial(map.det(), exps)
        };
        if !ok {
            mismatches += 1;
        }
    }
    c.check(
        mismatches == 0,
        format!("Jacobian exponent against formal differentiation: {mismatches} of 100 differ"),
    );
    c.finish(t0)
}

fn bracket_property(lab: &mut Lab) -> bool {
    let t0 = Instant::now();
    let mut c = Criterion::new(7, "measured exponents inside predicted ranges");
    for (text, n) in corpus() {
        let pred = lab.predict(text, n);
        let f = lab.fit(text, n);
        let upper = pred
            .growth_exponent
            .upper
            .as_ref()
            .map_or(f64::INFINITY, to_f64);
        c.check(
            pred.growth_exponent.contains_within(f.alpha, GROWTH_TOL)
                && f.alpha <= upper + GROWTH_TOL,
            format!(
                "{text}: measured {:.4} in {} ({:?})",
                f.alpha, pred.growth_exponent, pred.kind
            ),
        );
    }
    c.finish(t0)
}

fn main() {
    // `cargo test` passes harness flags; a name filter that excludes this target skips it
    let args: Vec<String> = std::env::args()
        .skip(1)
        .filter(|a| !a.starts_with('-'))
        .collect();
    if args.iter().any(|a| !"acceptance".contains(a.as_str())) {
        return;
    }
    let t0 = Instant::now();
    let mut lab = Lab::default();
    let results = [
        stability_family(&mut lab),
        oscillatory_family(),
        worked_examples(&mut lab),
        planar_trichotomy(&mut lab),
        envelope_suite(),
        map_suite(),
        bracket_property(&mut lab),
    ];
    let passed = results.iter().filter(|r| **r).count();
    println!(
        "acceptance: {passed}/{} criteria pass ({:.1}s)",
        results.len(),
        t0.elapsed().as_secs_f64()
    );
    // red criteria are reported, not fatal, unless strict mode is asked for
    if passed != results.len() && std::env::var_os("ACCEPTANCE_STRICT").is_some() {
        std::process::exit(1);
    }
}
