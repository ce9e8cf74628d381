//! Acceptance criteria. Each test writes one `PASS`/`FAIL` line to stderr
//! (bypassing the test harness capture) and then asserts.

use num_bigint::BigInt;
use num_rational::BigRational;
use std::io::Write;
use std::time::{Duration, Instant};
use topovertex::hierarchy::{conifold_two_variable, verify_hirota_suite, TwoVariableRoute};
use topovertex::partitions::{self, Partition};
use topovertex::qalgebra::QRational;
use topovertex::schur::{schur_hook, skew_schur_spec, verify_cauchy, CauchyIdentity, QScale, Spec, SpecInput};
use topovertex::vertex::{verify_cyclic, verify_two_leg_identity};
use topovertex::waves::{mirror_curve, product_form_check, verify_waves, wave_coefficients, ProductForm, WaveKind};
use topovertex::web::{
    calibrate_framing, default_framing, macmahon_from_schur, macmahon_series, plane_partition_counts, verify_conifold,
    verify_strip_oracle, Limits, StripDiagram,
};
use topovertex::{QSeries, Report};

fn line(n: u32, title: &str, ok: bool, elapsed: Duration, limit: Option<Duration>, detail: &str) {
    let within = limit.is_none_or(|l| elapsed <= l);
    let status = if ok && within { "PASS" } else { "FAIL" };
    let budget = limit.map(|l| format!(" / limit {:.0}s", l.as_secs_f64())).unwrap_or_default();
    let mut err = std::io::stderr();
    let _ = writeln!(err, "criterion {n:>2} {status}: {title} ({:.2}s{budget}){detail}", elapsed.as_secs_f64());
}

fn finish(n: u32, title: &str, start: Instant, limit: Option<Duration>, reports: &[Report]) {
    let elapsed = start.elapsed();
    let ok = reports.iter().all(Report::passed);
    let checks: usize = reports.iter().map(|r| r.checks).sum();
    let detail = match reports.iter().find(|r| !r.passed()) {
        Some(r) => format!(" -- {r}"),
        None => format!(" [{checks} checks]"),
    };
    line(n, title, ok, elapsed, limit, &detail);
    for r in reports {
        assert!(r.passed(), "{r}");
    }
    if let Some(l) = limit {
        assert!(elapsed <= l, "criterion {n} took {elapsed:?}, limit {l:?}");
    }
}

fn p(v: &[u32]) -> Partition {
    Partition::new(v.to_vec()).unwrap()
}

fn minutes(m: u64) -> Option<Duration> {
    Some(Duration::from_secs(60 * m))
}

#[test]
fn criterion_01_hook_formula() {
    let start = Instant::now();
    let mut r = Report::new("hook formula vs Jacobi-Trudi");
    let rho = Spec::rho();
    for lam in partitions::enumerate(6) {
        r.check(schur_hook(&lam) == skew_schur_spec(&lam, &Partition::empty(), &rho), || format!("{lam}"));
    }
    finish(1, "hook formula equals Jacobi-Trudi at q^rho, |lambda| <= 6", start, Some(Duration::from_secs(10)), &[r]);
}

#[test]
fn criterion_02_cyclic_symmetry() {
    let start = Instant::now();
    let r = verify_cyclic(3);
    finish(2, "cyclic symmetry of the vertex, all weights <= 3", start, minutes(2), &[r]);
}

#[test]
fn criterion_03_two_leg_identity() {
    let start = Instant::now();
    let r = verify_two_leg_identity(4);
    finish(3, "two-leg identity, |alpha|, |beta| <= 4", start, None, &[r]);
}

#[test]
fn criterion_04_resolved_conifold() {
    let start = Instant::now();
    let r = verify_conifold(2, 4, 3, &Limits::default());
    finish(4, "resolved conifold: glued = product = supersymmetric form, identity", start, None, &[r]);
}

fn sigma_patterns(n: usize) -> Vec<Vec<i8>> {
    (0..1u32 << n).map(|mask| (0..n).map(|i| if mask >> i & 1 == 1 { -1 } else { 1 }).collect()).collect()
}

#[test]
fn criterion_05_generalized_conifold() {
    let start = Instant::now();
    let mut calib = Report::new("framing calibration");
    for (a, b) in [(1, -1), (-1, 1), (1, 1), (-1, -1)] {
        let found = calibrate_framing(a, b, 2);
        calib.check(found == default_framing(&[a, b]), || format!("pair ({a},{b}) calibrated to {found:?}"));
    }
    let mut reports = vec![calib];
    for n in [2, 3] {
        for sigma in sigma_patterns(n) {
            let strip = StripDiagram::new(sigma).unwrap();
            reports.push(verify_strip_oracle(&strip, 3, 2, &Limits::default()));
        }
    }
    finish(5, "generalized conifold: glued = closed, N = 2, 3, all sigma, Q-degree 3", start, minutes(10), &reports);
}

#[test]
fn criterion_06_cauchy_suite() {
    let start = Instant::now();
    let mu = p(&[1]);
    let nu = p(&[2]);
    let identities = [
        CauchyIdentity::Plain,
        CauchyIdentity::Dual,
        CauchyIdentity::Skew { mu: mu.clone(), nu: nu.clone() },
        CauchyIdentity::SkewDual { mu, nu },
    ];
    let scales = [QScale::Formal, QScale::Numeric(BigRational::new((-3).into(), 2.into()))];
    let inputs = [
        (SpecInput::Formal(2), SpecInput::Formal(2)),
        (SpecInput::Exact(Spec::rho()), SpecInput::Formal(2)),
        (SpecInput::Formal(2), SpecInput::Exact(Spec::shifted(&p(&[2, 1])))),
    ];
    let mut reports = Vec::new();
    for id in &identities {
        for q in &scales {
            for (x, y) in &inputs {
                reports.push(verify_cauchy(id, x, y, q, 3));
            }
        }
    }
    finish(6, "Cauchy identities (plain, dual, skew, skew-dual), degree 3", start, None, &reports);
}

#[test]
fn criterion_07_hirota() {
    let start = Instant::now();
    let r = verify_hirota_suite(6, 2);
    finish(7, "KP Hirota residual vanishes to weight 6; mutation detected", start, None, &[r]);
}

#[test]
fn criterion_08_wave_functions() {
    let start = Instant::now();
    let mut reports = Vec::new();
    for n in [1, 2, 3] {
        for sigma in sigma_patterns(n) {
            let strip = StripDiagram::new(sigma).unwrap();
            for v in 1..=n {
                for kind in [WaveKind::Phi, WaveKind::Psi] {
                    reports.push(verify_waves(&strip, v, kind, 4, 2));
                }
            }
        }
    }
    for strip in [StripDiagram::conifold(), StripDiagram::new(vec![1]).unwrap()] {
        for kind in [WaveKind::Phi, WaveKind::Psi] {
            reports.push(verify_waves(&strip, 1, kind, 8, 3));
        }
    }
    // a_1 = (1-Q)/[1], a_2 = q^{1/2}(1-Q)(1-Q q^{-1})/([1][2])
    let mut exact = Report::new("conifold a_1, a_2");
    let w = wave_coefficients(&StripDiagram::conifold(), 1, WaveKind::Phi, 2, 2).unwrap();
    let q = QSeries::var(&w.ctx, "Q").unwrap();
    let one = QSeries::one(&w.ctx);
    let bracket = |k: i64| QRational::vpow(k) - QRational::vpow(-k);
    let a1 = (&one - &q).scale(&(QRational::one() / bracket(1)));
    let a2 = (&(&one - &q) * &(&one - &q.scale(&QRational::vpow(-2)))).scale(&(QRational::vpow(1) / (bracket(1) * bracket(2))));
    exact.check(w.coeffs[1] == a1, || "a_1".into());
    exact.check(w.coeffs[2] == a2, || "a_2".into());
    reports.push(exact);
    finish(8, "wave functions: both routes, recurrence, q-difference equations", start, None, &reports);
}

#[test]
fn criterion_09_product_forms() {
    let start = Instant::now();
    let reports = vec![product_form_check(ProductForm::Conifold, 8, 4), product_form_check(ProductForm::C3, 8, 0)];
    finish(9, "conifold and C3 wave functions equal their product forms to x^8", start, None, &reports);
}

#[test]
fn criterion_10_mirror_curve() {
    let start = Instant::now();
    let (curve, classical) = mirror_curve(&StripDiagram::conifold(), 1).unwrap();
    let mut symbolic = Report::new("conifold curve");
    symbolic.check(curve.b.is_one(), || format!("B = {}", curve.b));
    symbolic.check(curve.to_string() == "x = (1 - y^-1)/(1 - Q*y^-1)", || curve.to_string());
    // the same curve evaluated independently
    for (qv, y) in [(0.3, 1.7), (-0.2, 0.4)] {
        let expected = (1.0 - 1.0 / y) / (1.0 - qv / y);
        symbolic.check((curve.x_at(&[qv], y) - expected).abs() < 1e-14, || format!("value at Q={qv}, y={y}"));
    }
    finish(10, "mirror curve of the conifold, classical limit at tolerance 1e-8", start, None, &[symbolic, classical]);
}

/// Plane partitions of `n` by direct enumeration of rows.
fn count_plane_partitions(n: u32) -> u64 {
    fn rows(remaining: u32, above: &[u32]) -> u64 {
        if remaining == 0 {
            return 1;
        }
        // next row: a partition dominated entrywise by `above`
        let mut total = 0;
        let mut row = Vec::new();
        fn fill(i: usize, remaining: u32, above: &[u32], row: &mut Vec<u32>, total: &mut u64, budget: u32) {
            let sum: u32 = row.iter().sum();
            if sum > 0 {
                *total += rows(budget - sum, row);
            }
            if i >= above.len() {
                return;
            }
            let bound = above[i].min(row.last().copied().unwrap_or(u32::MAX)).min(remaining);
            for x in 1..=bound {
                row.push(x);
                fill(i + 1, remaining - x, above, row, total, budget);
                row.pop();
            }
        }
        fill(0, remaining, above, &mut row, &mut total, remaining);
        total
    }
    rows(n, &vec![n; n as usize])
}

#[test]
fn criterion_11_macmahon() {
    let start = Instant::now();
    let mut r = Report::new("MacMahon");
    r.check(macmahon_series(5) == macmahon_from_schur(5), || "two routes differ".into());
    let counts = plane_partition_counts(5);
    for (n, c) in counts.iter().enumerate() {
        let brute = count_plane_partitions(n as u32);
        r.check(*c == BigInt::from(brute), || format!("volume {n}: {c} vs enumerated {brute}"));
    }
    let expected = [1, 1, 3, 6, 13, 24];
    r.check(counts.iter().zip(expected).all(|(c, e)| *c == BigInt::from(e)), || format!("{counts:?}"));
    finish(11, "MacMahon function: two routes, plane partition counts 1,1,3,6,13,24", start, None, &[r]);
}

#[test]
fn criterion_12_conifold_two_variable() {
    let start = Instant::now();
    let mut r = Report::new("conifold two-variable generating function");
    let product = conifold_two_variable(2, 3, 3, TwoVariableRoute::Product);
    let exponential = conifold_two_variable(2, 3, 3, TwoVariableRoute::Exponential);
    let schur = conifold_two_variable(2, 3, 3, TwoVariableRoute::SchurSum);
    r.check(product == exponential, || "product vs exponential".into());
    r.check(product == schur, || "product vs Schur sum".into());
    finish(12, "conifold two-variable generating function: three routes agree", start, None, &[r]);
}
