//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! Criteria listed in `KNOWN_FAILURES` still print FAIL when they fail, but do
//! not turn the process status red; every other failure does.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::time::Instant;

use clap::Parser;

use certgamma::bernoulli::half_shift_identity_check;
use certgamma::bounds::{self, bound_faulty, CkTable, Target, CK_MAX};
use certgamma::lngamma::{eval_lngamma, eval_lngamma_half, Request};
use certgamma::oracle::{
    oracle_lngamma, oracle_remainder, oracle_term, oracle_theta, oracle_theta_error, oracle_theta_remainder,
    remainder_ratio,
};
use certgamma::series::{self, ComplexPoint, SeriesKind};
use certgamma::theta::{eval_theta, Terms, ThetaVariant};
use certgamma::{ExtComplex, ExtReal};
use certgamma_cli::{run, Cli, OutputRecord};

/// Criterion 5 quotes the imaginary-part ratio; the modulus ratio it names differs (see README).
const KNOWN_FAILURES: &[u32] = &[5];

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn cli(args: &[&str]) -> Vec<OutputRecord> {
    let cli = Cli::try_parse_from(std::iter::once("certgamma").chain(args.iter().copied())).expect("valid arguments");
    run(&cli)
}

fn pt(re: f64, im: f64) -> ComplexPoint {
    ComplexPoint::new(re, im).expect("finite point")
}

fn table1() -> Outcome {
    let printed = [
        (1, "0.072096"),
        (2, "0.103961"),
        (3, "0.104294"),
        (4, "0.105304"),
        (5, "0.106460"),
        (6, "0.107384"),
        (7, "0.108089"),
        (8, "0.108634"),
        (9, "0.109067"),
        (10, "0.109419"),
        (15, "0.110498"),
        (20, "0.111050"),
        (25, "0.111384"),
        (30, "0.111609"),
        (50, "0.112060"),
    ];
    let recs = cli(&["table1", "--kmax", "50", "--digits", "6"]);
    let got: BTreeMap<u32, String> = recs
        .iter()
        .filter(|r| !r.is_error())
        .map(|r| (r.outputs["k"].parse().unwrap(), r.outputs["c_k"].clone()))
        .collect();
    let bad: Vec<String> = printed
        .iter()
        .filter(|(k, v)| got.get(k).map(String::as_str) != Some(*v))
        .map(|(k, v)| format!("k={k} want {v} got {:?}", got.get(k)))
        .collect();
    outcome(bad.is_empty() && got.len() == 50, format!("15 printed values, mismatches: {bad:?}"))
}

fn ck_law() -> Outcome {
    let vals = CkTable::get().values();
    let d = 50;
    let pi = ExtReal::pi(d);
    let limit = ExtReal::from_i64(1, d) / (&pi * &pi - ExtReal::from_i64(1, d));
    let mut ok = vals.len() >= CK_MAX as usize;
    for (i, c) in vals.iter().enumerate().take(CK_MAX as usize) {
        if *c >= limit || (i > 0 && *c <= vals[i - 1]) {
            ok = false;
        }
    }
    outcome(ok, format!("k <= {CK_MAX}, c_100 = {}", vals[CK_MAX as usize - 1].to_sci_string(10)))
}

fn table2() -> Outcome {
    let printed = [
        ("1", "4", "7.2e1", "3.57", "-0.79", "-1.1e-2"),
        ("2", "7", "2.4e3", "4.69", "-0.63", "+2.4e-4"),
        ("5", "16", "4.6e7", "7.09", "-0.21", "+2.8e-3"),
        ("10", "32", "4.4e14", "10.0", "-0.50", "+8.3e-4"),
        ("20", "64", "2.7e28", "14.2", "-1.08", "+8.3e-5"),
        ("50", "158", "3.7e69", "22.3", "-0.84", "-1.5e-4"),
        ("100", "315", "8.6e137", "31.5", "-0.76", "-5.2e-5"),
    ];
    let recs = cli(&["table2"]);
    let mut bad = Vec::new();
    for (t, k, a, b, c, d) in printed {
        let Some(r) = recs.iter().find(|r| r.inputs.get("t").map(String::as_str) == Some(t)) else {
            bad.push(format!("t={t} missing"));
            continue;
        };
        if r.is_error() {
            bad.push(format!("t={t}: {}", r.outputs["message"]));
            continue;
        }
        let o = &r.outputs;
        let got = (o["k_min"].as_str(), o["a"].as_str(), o["b"].as_str(), o["c"].as_str(), o["d"].as_str());
        if got != (k, a, b, c, d) {
            bad.push(format!("t={t} got {got:?}"));
        }
    }
    outcome(bad.is_empty(), format!("7 rows, mismatches: {bad:?}"))
}

fn faulty() -> Outcome {
    let t = ExtReal::parse("9.5", 40).unwrap();
    let err = oracle_theta_error(&t, 3, ThetaVariant::Standard, 30).unwrap();
    let ratio = err.abs().to_f64() / bound_faulty(3, 9.5).unwrap();
    outcome((1.005..=1.017).contains(&ratio), format!("error / faulty bound = {ratio:.6}"))
}

fn sharpness() -> Outcome {
    let mut pass = true;
    let mut parts = Vec::new();
    for (y, k, quoted) in [(100.0 / PI, 90u32, 4.62), (400.0 / PI, 383, 10.15)] {
        let z = ExtComplex::from_f64(0.0, y, 40);
        let r = remainder_ratio(&z, k, SeriesKind::Stirling, 30).unwrap();
        let m = r.modulus.to_f64();
        let im = r.imaginary.to_f64();
        pass &= (m - quoted).abs() <= 0.02;
        parts.push(format!("k={k}: |R/T| = {m:.4} (want {quoted} +- 0.02), |Im R|/|T| = {im:.4}"));
    }
    outcome(pass, parts.join("; "))
}

fn containment_grid() -> Vec<(f64, f64)> {
    let mut pts = Vec::new();
    for re in [0.0, 0.5, 1.0, 5.0] {
        for im in [0.1, 1.0, 10.0, 40.0] {
            pts.push((re, im));
        }
    }
    pts.extend([(1.0, 0.0), (5.0, 0.0), (25.0, 0.0)]);
    pts
}

fn containment() -> Outcome {
    let mut checked = 0usize;
    let mut violations = Vec::new();
    let digits = 30;
    for family in [SeriesKind::Stirling, SeriesKind::Gauss] {
        for &(re, im) in &containment_grid() {
            let z = pt(re, im);
            let ze = ExtComplex::from_f64(re, im, digits + 10);
            for k in 1..=20u32 {
                let next = oracle_remainder(&ze, k, family, digits).unwrap();
                let this = &next + &oracle_term(k, &ze.with_digits(next.precision_digits()), family).unwrap();
                for target in [Target::RkNext, Target::Rk] {
                    let truth = match target {
                        Target::RkNext => next.abs(),
                        Target::Rk => this.abs(),
                    };
                    for b in bounds::all_bounds(k, z, family, target).unwrap() {
                        if !b.is_rigorous() {
                            continue;
                        }
                        checked += 1;
                        if !(truth <= b.value) {
                            violations.push(format!("{family:?} {} k={k} z={re}+{im}i {target:?}", b.kind));
                        }
                    }
                }
            }
        }
    }
    let ts = [0.1, 0.5, 1.0, 5.0, 10.0, 25.0, 40.0];
    for &t in &ts {
        let te = ExtReal::from_f64(t, digits + 10);
        for k in 1..=20u32 {
            let truth = oracle_theta_remainder(&te, k, digits).unwrap().abs();
            for b in bounds::all_bounds(k, pt(t, 0.0), SeriesKind::Theta, Target::RkNext).unwrap() {
                if !b.is_rigorous() {
                    continue;
                }
                checked += 1;
                if !(truth <= b.value) {
                    violations.push(format!("Theta {} k={k} t={t}", b.kind));
                }
            }
        }
    }
    outcome(
        violations.is_empty() && checked > 0,
        format!("{checked} bound checks, violations: {violations:?}"),
    )
}

fn lngamma_points() -> Vec<(f64, f64)> {
    let res = [-7.5, -2.5, -0.5, 0.25, 1.0, 3.0, 10.0, 30.0, 100.0, 1000.0];
    let ims = [0.01, 0.1, 0.5, 1.0, 2.0, 5.0, 10.0, 30.0, 100.0, 1000.0];
    let mut out = Vec::new();
    for re in res {
        for im in ims {
            out.push((re, im));
            out.push((re, -im));
        }
    }
    out
}

fn request(i: usize) -> Request {
    match i % 2 {
        0 => Request::Default,
        _ => Request::Terms([3, 8, 15][(i / 2) % 3]),
    }
}

fn value_containment() -> Outcome {
    let digits = 40;
    let mut n = 0usize;
    let mut bad = Vec::new();
    for (i, &(re, im)) in lngamma_points().iter().enumerate() {
        let truth = oracle_lngamma(&ExtComplex::from_f64(re, im, digits), digits).unwrap();
        let req = request(i);
        match eval_lngamma(pt(re, im), req) {
            Ok(c) => {
                n += 1;
                let d = (&truth - &ExtComplex::from_f64(c.value.re, c.value.im, digits)).abs();
                if !(d <= c.radius) {
                    bad.push(format!("lngamma z={re}+{im}i {req:?}"));
                }
            }
            Err(e) => bad.push(format!("lngamma z={re}+{im}i {req:?}: {e}")),
        }
        let re_h = re.abs();
        let truth = oracle_lngamma(&ExtComplex::from_f64(re_h + 0.5, im, digits), digits).unwrap();
        match eval_lngamma_half(pt(re_h, im), req) {
            Ok(c) => {
                n += 1;
                let d = (&truth - &ExtComplex::from_f64(c.value.re, c.value.im, digits)).abs();
                if !(d <= c.radius) {
                    bad.push(format!("lngamma_half z={re_h}+{im}i {req:?}"));
                }
            }
            Err(e) => bad.push(format!("lngamma_half z={re_h}+{im}i {req:?}: {e}")),
        }
    }
    for i in 0..200 {
        let mag = 0.1 * 1.04f64.powi(i);
        let t = if i % 2 == 0 { mag } else { -mag };
        let truth = oracle_theta(&ExtReal::from_f64(mag, digits), digits).unwrap();
        let truth = if t < 0.0 { -truth } else { truth };
        for v in [ThetaVariant::Standard, ThetaVariant::Arctan, ThetaVariant::Empirical] {
            match eval_theta(t, Terms::Auto, v) {
                Ok(r) => {
                    n += 1;
                    if !((&truth - &ExtReal::from_f64(r.value, digits)).abs() <= r.radius) {
                        bad.push(format!("theta t={t} {v:?}"));
                    }
                }
                Err(e) => bad.push(format!("theta t={t} {v:?}: {e}")),
            }
        }
    }
    outcome(bad.is_empty(), format!("{n} certified values checked, failures: {bad:?}"))
}

fn identities() -> Outcome {
    let mut bad = Vec::new();
    let d = 50;
    let tol = 1e-40;
    for k in 1..=20 {
        for u in ["0", "0.1", "0.25", "0.4999", "0.5", "0.73", "0.999"] {
            if !half_shift_identity_check(k, &ExtReal::parse(u, d).unwrap()) {
                bad.push(format!("half shift k={k} u={u}"));
            }
        }
    }
    for t in [0.5, 1.0, 2.0, 5.0] {
        let expect = -((-ExtReal::pi(60).mul_f64(2.0 * t)).exp().ln_1p().div_i64(2));
        for k in [1, 3, 7] {
            let r = oracle_remainder(&ExtComplex::from_f64(0.0, t, 60), k, SeriesKind::Gauss, 45).unwrap();
            if !((r.re() - &expect).abs() < tol) {
                bad.push(format!("Re Rhat t={t} k={k}"));
            }
        }
    }
    let zero = eval_theta(0.0, Terms::Auto, ThetaVariant::Arctan).unwrap();
    if zero.value != 0.0 || zero.radius != 0.0 {
        bad.push("theta(0)".into());
    }
    for t in [0.3, 1.0, 7.0, 42.0] {
        for v in [ThetaVariant::Standard, ThetaVariant::Arctan, ThetaVariant::Empirical] {
            let a = eval_theta(t, Terms::Auto, v).unwrap();
            let b = eval_theta(-t, Terms::Auto, v).unwrap();
            if a.value != -b.value || a.radius != b.radius {
                bad.push(format!("oddness t={t} {v:?}"));
            }
        }
    }
    let near0 = oracle_theta(&ExtReal::parse("1e-30", d).unwrap(), 45).unwrap();
    if !(near0.abs() < 1e-29) {
        bad.push("oracle theta continuity at 0".into());
    }
    for (re, im) in [(0.3, 0.2), (0.5, 0.0), (1.0, 5.0), (7.5, -3.0), (20.0, 60.0)] {
        let z = ExtComplex::from_f64(re, im, 60);
        let two = ExtReal::from_i64(2, 60);
        let lhs = oracle_lngamma(&z.scale(&two), 50).unwrap();
        let half = ExtReal::from_f64(0.5, 60);
        let rhs = &(&oracle_lngamma(&z, 50).unwrap() + &oracle_lngamma(&z.add_real(&half), 50).unwrap())
            + &(&z.scale(&two).add_real(&-ExtReal::from_i64(1, 60))).scale(&two.ln());
        let rhs = rhs.add_real(&-(ExtReal::pi(60).ln() * &half));
        if !((&lhs - &rhs).abs() < tol) {
            bad.push(format!("duplication z={re}+{im}i"));
        }
    }
    outcome(bad.is_empty(), format!("failures: {bad:?}"))
}

fn conjecture() -> Outcome {
    let recs = cli(&["scan", "--what", "conjecture"]);
    let errors = recs.iter().filter(|r| r.is_error()).count();
    let Some(summary) = recs.iter().rev().find(|r| r.outputs.contains_key("violations")) else {
        return outcome(false, "no summary record");
    };
    let o = &summary.outputs;
    outcome(
        errors == 0 && o["violations"] == "0",
        format!(
            "{} points, {} violations, max quotient {}, {} oracle errors",
            o["points"], o["violations"], o["max_quotient"], errors
        ),
    )
}

fn attainable() -> Outcome {
    let mut pass = true;
    let mut parts = Vec::new();
    for t in [5.0, 10.0, 20.0] {
        let k = series::k_min(t).unwrap().k_min;
        let te = ExtReal::from_f64(t, 60);
        let rt = oracle_theta_remainder(&te, k, 30).unwrap().abs();
        let half_e2 = (-ExtReal::pi(60).mul_f64(2.0 * t)).exp().div_i64(2);
        let q1 = (&rt / &half_e2).to_f64();
        let std_err = oracle_theta_error(&te, k, ThetaVariant::Standard, 30).unwrap().abs();
        let half_e1 = (-ExtReal::pi(60).mul_f64(t)).exp().div_i64(2);
        let q2 = (&std_err / &half_e1).to_f64();
        pass &= q1 < 1.0 + 10.0 / t && q2 > 0.9 && q2 < 1.1;
        parts.push(format!("t={t}: |R|/(e^-2pt/2) = {q1:.4}, standard/(e^-pt/2) = {q2:.6}"));
    }
    outcome(pass, parts.join("; "))
}

fn main() {
    let criteria: [(u32, &str, Option<u64>, fn() -> Outcome); 10] = [
        (1, "table1 reproduction", Some(10), table1),
        (2, "c_k law", Some(60), ck_law),
        (3, "table2 reproduction", Some(600), table2),
        (4, "faulty-bound falsification", Some(30), faulty),
        (5, "sharpness spot checks", Some(300), sharpness),
        (6, "bound containment suite", Some(600), containment),
        (7, "certified-value containment", None, value_containment),
        (8, "identity suite", None, identities),
        (9, "conjecture scan", None, conjecture),
        (10, "attainable-accuracy law", None, attainable),
    ];
    let mut unexpected = 0;
    for (n, name, limit, f) in criteria {
        let start = Instant::now();
        let out = std::panic::catch_unwind(f).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            outcome(false, format!("panicked: {msg}"))
        });
        let elapsed = start.elapsed();
        let pass = out.pass && limit.map_or(true, |l| elapsed.as_secs_f64() < l as f64);
        let status = if pass { "PASS" } else { "FAIL" };
        let note = if !pass && KNOWN_FAILURES.contains(&n) { " [known]" } else { "" };
        let limit = limit.map_or(String::new(), |l| format!(", limit {l}s"));
        println!(
            "criterion {n:>2} {status}{note}: {name} ({:.1}s{limit}) {}",
            elapsed.as_secs_f64(),
            out.detail
        );
        if !pass && !KNOWN_FAILURES.contains(&n) {
            unexpected += 1;
        }
    }
    if unexpected > 0 {
        std::process::exit(1);
    }
}
