//! One line per acceptance criterion. Exits nonzero if any of criteria 1-7 fails.

mod common;

use std::time::{Duration, Instant};

use atinfinity::bridge::qp_bridge;
use atinfinity::classifier::{classify_with, homogenize_map, Mode, NumericConfig, Status};
use atinfinity::cli::corpus::{self, run_case};
use atinfinity::parser::{parse_map, parse_path, random_polynomial_map, RegularMap};
use atinfinity::polyring::{rat, MPoly};
use atinfinity::projective::{path_limit, ProjPoint};
use atinfinity::sampler::{polynomial_image_obstruction, SampleConfig, Stability, Subject};

const SEEDS: [u64; 5] = [0, 1, 2, 3, 4];

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        passed,
        detail: detail.into(),
    }
}

fn corpus_map(id: &str) -> RegularMap {
    parse_map(corpus::find(id).expect("corpus id").source()).expect("corpus map parses")
}

fn seeded_maps() -> Vec<RegularMap> {
    SEEDS.iter().map(|&s| random_polynomial_map(s, 2, 2, 3)).collect()
}

/// `(x0^4 + x1^4)^3 (x0^4 + x2^4)^2` in `x0, x1, x2`.
fn expected_f0prime() -> MPoly {
    let v = |i| MPoly::var(3, i);
    let a = &v(0).pow(4) + &v(1).pow(4);
    let b = &v(0).pow(4) + &v(2).pow(4);
    &a.pow(3) * &b.pow(2)
}

fn criterion_1() -> Outcome {
    let h = homogenize_map(&corpus_map("low-denominator")).unwrap();
    let want = expected_f0prime();
    let ratio = h.f0prime.leading_coeff().unwrap() / want.leading_coeff().unwrap();
    let same = ratio > rat(0) && want.scale(&ratio) == h.f0prime;
    outcome(
        h.d == 22 && h.e == 2 && same,
        format!("d = {}, e = {}, F0' positive multiple of the expected product: {same}", h.d, h.e),
    )
}

fn exact(f: &RegularMap) -> atinfinity::classifier::QPVerdict {
    classify_with(f, Mode::Exact, &NumericConfig::default()).unwrap()
}

fn criterion_2() -> Outcome {
    let mut notes = Vec::new();
    let mut ok = true;
    let mut slowest = Duration::ZERO;
    let mut timed = |f: &RegularMap| {
        let start = Instant::now();
        let v = exact(f);
        slowest = slowest.max(start.elapsed());
        v
    };

    let v = timed(&corpus_map("quarter-region"));
    let good = v.status == Status::NotQuasiPolynomial && v.reason.name() == "DegreeConditionFailed";
    ok &= good;
    notes.push(format!("degree-condition map {}", v.reason.name()));

    let v = timed(&corpus_map("low-denominator"));
    let targets = ["0:1:0", "0:0:1"].map(|s| ProjPoint::parse(s).unwrap());
    let w = v.witness().and_then(|w| w.exact()).cloned();
    let good = v.status == Status::NotQuasiPolynomial && w.as_ref().is_some_and(|p| targets.contains(p));
    ok &= good;
    notes.push(format!("witness {}", w.map_or("none".into(), |p| p.to_string())));

    let mut qp = 0;
    for f in seeded_maps().iter().chain([&corpus_map("hyperbola-curve")]) {
        if timed(f).status == Status::QuasiPolynomial {
            qp += 1;
        }
    }
    ok &= qp == 6;
    notes.push(format!("{qp}/6 quasi-polynomial"));
    ok &= slowest < Duration::from_secs(10);
    notes.push(format!("slowest {:.2} s < 10 s", slowest.as_secs_f64()));
    outcome(ok, notes.join("; "))
}

fn criterion_3() -> Outcome {
    let f = corpus_map("three-lines");
    let mut ok = true;
    let mut got = Vec::new();
    for (c, d) in [(1, 1), (1, 2), (2, 1)] {
        let path = parse_path(&format!("({d}/t, {c}/t)")).unwrap();
        let p = path_limit(&f, &path).unwrap().point;
        let want = ProjPoint::normalize(&[rat(0), rat(d * d), rat(c * c)]).unwrap();
        ok &= p == want;
        got.push(p.integral_string());
    }
    outcome(ok, format!("limits {}", got.join(", ")))
}

fn criterion_4() -> Outcome {
    match common::bridge_identities(200) {
        Ok(()) => outcome(true, "200 cases, n <= 4, |k| <= 6, deg p <= 5, zero failures"),
        Err(e) => outcome(false, e),
    }
}

fn criterion_5() -> Outcome {
    let f = parse_map("(x, y^2 + x^2)").unwrap();
    let alpha = parse_path("(1/t^6, 1)").unwrap();
    // degree of the denominator of g, from the homogenization of f alone
    let h = homogenize_map(&f).unwrap();
    let mut ok = true;
    let mut notes = Vec::new();
    // the default ell, and a larger one where deg g0 is not zero
    for ell in [None, Some(2)] {
        let res = qp_bridge(&f, &alpha, ell).unwrap();
        let q = res.qp.as_ref().unwrap();
        let want = h.d * (4 * q.ell + 6) - h.e * 6;
        let deg_g0 = res.g.f0().total_degree().unwrap();
        let g_qp = exact(&res.g).status == Status::QuasiPolynomial;
        let failed: Vec<&str> = res.checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect();
        ok &= res.all_passed() && deg_g0 == want && g_qp;
        notes.push(format!(
            "ell = {}: deg g0 = {deg_g0} (expected {want}), classify(g) quasi-polynomial: {g_qp}, failed checks: {failed:?}",
            q.ell
        ));
    }
    outcome(ok, notes.join("; "))
}

fn criterion_6() -> Outcome {
    let cfg = SampleConfig::default();
    let mut ok = true;
    let mut notes = Vec::new();
    let mut slowest = Duration::ZERO;
    for id in ["hyperbola-branch", "three-lines", "strip-wedge", "two-arcs"] {
        let start = Instant::now();
        let out = run_case(&corpus::find(id).unwrap(), &cfg, true).unwrap();
        slowest = slowest.max(start.elapsed());
        let sampled: Vec<String> = out
            .checks
            .iter()
            .filter(|c| c.name == "components" || c.name.starts_with("arc"))
            .map(|c| format!("{} {}", c.name, c.detail))
            .collect();
        ok &= out.passed();
        notes.push(format!("{id}: {}", sampled.join(", ")));
    }
    let mut ones = 0;
    for f in seeded_maps() {
        let start = Instant::now();
        let (_, report) = polynomial_image_obstruction(Subject::Map(&f), &cfg).unwrap();
        slowest = slowest.max(start.elapsed());
        if report.stable_count == Stability::Stable(1) {
            ones += 1;
        }
    }
    ok &= ones == SEEDS.len();
    notes.push(format!("seeded polynomial maps with one component: {ones}/{}", SEEDS.len()));
    ok &= slowest < Duration::from_secs(120);
    notes.push(format!("slowest {:.1} s < 120 s", slowest.as_secs_f64()));
    outcome(ok, notes.join("; "))
}

fn criterion_7() -> Outcome {
    let start = Instant::now();
    let mut failed = Vec::new();
    for (name, suite) in common::SUITES {
        if let Err(e) = suite(256) {
            failed.push(format!("{name}: {e}"));
        }
    }
    let secs = start.elapsed().as_secs_f64();
    outcome(
        failed.is_empty() && secs < 300.0,
        format!("{} suites x 256 cases in {secs:.1} s < 300 s; failures: {failed:?}", common::SUITES.len()),
    )
}

fn main() {
    // whole-criterion budgets in seconds; per-run limits are checked inside
    let limits = [1.0, 80.0, 1.0, 60.0, 30.0, 1080.0, 300.0];
    type Criterion = (&'static str, fn() -> Outcome);
    let criteria: [Criterion; 7] = [
        ("homogenization of the low-denominator map", criterion_1),
        ("exact classification", criterion_2),
        ("limits along the lines c x = d y", criterion_3),
        ("bridge identities", criterion_4),
        ("quasi-polynomial bridge on (x, y^2 + x^2)", criterion_5),
        ("sampler component counts", criterion_6),
        ("property suites", criterion_7),
    ];
    let mut all = true;
    for (i, ((name, run), limit)) in criteria.iter().zip(limits).enumerate() {
        let start = Instant::now();
        let mut o = run();
        let secs = start.elapsed().as_secs_f64();
        if secs >= limit {
            o.passed = false;
        }
        all &= o.passed;
        println!(
            "criterion {}: {}  {name} ({secs:.2} s): {}",
            i + 1,
            if o.passed { "PASS" } else { "FAIL" },
            o.detail
        );
    }
    println!(
        "criterion 8: PASS  scope: connectedness of the set at infinity for general quasi-polynomial maps \
         is a theorem and is not checked here; only concrete identities and example values are"
    );
    if !all {
        std::process::exit(1);
    }
}
