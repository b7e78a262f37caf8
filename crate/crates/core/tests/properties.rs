mod common;

use proptest::prelude::*;

use atinfinity::bridge::{build_bridge, normalize_path, qp_bridge, Target};
use atinfinity::classifier::{classify, classify_with, Mode, NumericConfig};
use atinfinity::cli::corpus;
use atinfinity::parser::{parse_map, parse_path, random_polynomial_map, RegularMap};
use atinfinity::polyring::{ratio, MPoly};
use atinfinity::sampler::{sample_map_infinity, SampleConfig};

const CASES: u32 = 256;

#[test]
fn polyring_roundtrips() {
    common::polyring_roundtrips(CASES).unwrap();
}

#[test]
fn gcd_reconstruction() {
    common::gcd_reconstruction(CASES).unwrap();
}

#[test]
fn compose_path_homomorphism() {
    common::compose_path_homomorphism(CASES).unwrap();
}

#[test]
fn projective_scaling() {
    common::projective_scaling(CASES).unwrap();
}

#[test]
fn limit_vs_numeric() {
    common::limit_vs_numeric(CASES).unwrap();
}

#[test]
fn eps_monotonicity() {
    common::eps_monotonicity(CASES).unwrap();
}

#[test]
fn antipodal_soundness() {
    common::antipodal_soundness(CASES).unwrap();
}

#[test]
fn bridge_identities() {
    common::bridge_identities(CASES).unwrap();
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn bridge_composes(seed in 0u64..1000, alpha in common::bridge_path(2), beta in common::bridge_path(2),
                       u in (common::small_rat(), common::small_rat())) {
        let f = random_polynomial_map(seed, 2, 2, 2);
        let na = normalize_path(&alpha, Target::Simple).unwrap();
        let nb = normalize_path(&beta, Target::Simple).unwrap();
        let res = build_bridge(&f, &na, &nb).unwrap();
        let u = [u.0, u.1];
        let hu = res.h.eval(&u).unwrap();
        prop_assert_eq!(res.g.eval(&u), f.eval(&hu));
    }

    #[test]
    fn classify_invariant_under_swap_and_scaling(seed in 0u64..1000, c in 1i64..5) {
        let f = random_polynomial_map(seed, 2, 2, 3);
        let swap = RegularMap::polynomial(2, vec![MPoly::var(2, 1), MPoly::var(2, 0)]).unwrap();
        let scaled = RegularMap::polynomial(2, f.fs().iter().map(|p| p.scale(&ratio(c, 1))).collect()).unwrap();
        let want = classify(&f).unwrap().status;
        prop_assert_eq!(classify(&f.compose(&swap).unwrap()).unwrap().status, want);
        prop_assert_eq!(classify(&scaled).unwrap().status, want);
    }
}

#[test]
fn classify_invariant_on_corpus() {
    let swap = RegularMap::polynomial(2, vec![MPoly::var(2, 1), MPoly::var(2, 0)]).unwrap();
    for c in corpus::cases().iter().filter(|c| !c.is_set()) {
        let f = parse_map(c.source()).unwrap();
        if f.n() != 2 {
            continue;
        }
        let a = classify_with(&f, Mode::Exact, &NumericConfig::default()).unwrap();
        let b = classify_with(&f.compose(&swap).unwrap(), Mode::Exact, &NumericConfig::default()).unwrap();
        assert_eq!(a.status, b.status, "{}", c.id);
        assert_eq!(a.reason.name(), b.reason.name(), "{}", c.id);
    }
}

#[test]
fn ell_monotonicity() {
    let f = parse_map("(x, y^2 + x^2)").unwrap();
    let alpha = parse_path("(1/t^6, 1)").unwrap();
    let base = qp_bridge(&f, &alpha, None).unwrap();
    let ell0 = base.qp.as_ref().unwrap().ell0;
    let mut last = 0;
    for ell in ell0..ell0 + 3 {
        let res = qp_bridge(&f, &alpha, Some(ell)).unwrap();
        assert!(res.all_passed(), "ell = {ell}: {:?}", res.checks);
        let q = res.qp.unwrap();
        assert_eq!(q.mu, 4 * ell + 6);
        let deg = res.g.f0().total_degree().unwrap().max(res.g.degree());
        assert!(deg > last);
        last = deg;
    }
    // requests below the minimum are raised to it
    let low = qp_bridge(&f, &alpha, Some(0)).unwrap();
    assert_eq!(low.qp.unwrap().ell, ell0);
}

#[test]
fn sampler_is_deterministic() {
    let f = parse_map(corpus::find("three-lines").unwrap().source()).unwrap();
    let cfg = SampleConfig {
        radii: vec![1e3, 1e5],
        n_samples: 800,
        ..SampleConfig::default()
    };
    let a = sample_map_infinity(&f, &cfg).unwrap();
    let b = sample_map_infinity(&f, &cfg).unwrap();
    assert_eq!(a.directions, b.directions);
    assert_eq!(a.counts(), b.counts());
}
