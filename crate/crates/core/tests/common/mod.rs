//! Strategies and property suites shared by the `properties` and `acceptance` targets.
#![allow(dead_code)]

use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestCaseError, TestRng, TestRunner};

use atinfinity::bridge::{build_bridge, normalize_path, Target};
use atinfinity::cli::corpus;
use atinfinity::parser::{parse_map, random_polynomial_map, RationalPath, RegularMap};
use atinfinity::polyring::gcd::associates;
use atinfinity::polyring::rational::rat_to_f64;
use atinfinity::polyring::{compose_path, gcd, ratio, LaurentPoly, MPoly, Rat};
use atinfinity::projective::{antipodal_distance, numeric_value, path_limit, tuple_limit, ProjPoint};
use atinfinity::sampler::{component_count, component_labels};

pub fn runner(cases: u32) -> TestRunner {
    let cfg = Config {
        cases,
        failure_persistence: None,
        max_shrink_iters: 256,
        ..Config::default()
    };
    TestRunner::new_with_rng(cfg, TestRng::deterministic_rng(RngAlgorithm::ChaCha))
}

fn check<S: Strategy>(
    cases: u32,
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<(), String> {
    runner(cases).run(&strategy, test).map_err(|e| e.to_string())
}

pub fn small_rat() -> impl Strategy<Value = Rat> {
    (-6i64..=6, 1i64..=4).prop_map(|(n, d)| ratio(n, d))
}

pub fn nonzero_rat() -> impl Strategy<Value = Rat> {
    (prop_oneof![-6i64..=-1, 1i64..=6], 1i64..=4).prop_map(|(n, d)| ratio(n, d))
}

pub fn mpoly(nvars: usize, max_deg: u32, max_terms: usize) -> impl Strategy<Value = MPoly> {
    prop::collection::vec((prop::collection::vec(0..=max_deg, nvars), small_rat()), 0..=max_terms).prop_map(
        move |ts| {
            MPoly::from_terms(
                nvars,
                ts.into_iter().filter(|(e, _)| e.iter().sum::<u32>() <= max_deg),
            )
        },
    )
}

pub fn nonzero_mpoly(nvars: usize, max_deg: u32, max_terms: usize) -> impl Strategy<Value = MPoly> {
    mpoly(nvars, max_deg, max_terms).prop_filter("nonzero", |p| !p.is_zero())
}

pub fn laurent() -> impl Strategy<Value = LaurentPoly> {
    prop::collection::vec((-4i64..=3, small_rat()), 0..=4).prop_map(LaurentPoly::from_terms)
}

/// `t^k (c0 + c1 t + ... )` with `c0 != 0`.
fn unit_laurent(k: i64, c0: Rat, rest: Vec<Rat>) -> LaurentPoly {
    LaurentPoly::from_terms(std::iter::once((k, c0)).chain(rest.into_iter().enumerate().map(|(j, c)| (k + 1 + j as i64, c))))
}

/// Path in `R^n` with orders in `[-6, 6]`, unit parts of degree at most 5, some zero
/// components, and at least one component of negative order.
pub fn bridge_path(n: usize) -> impl Strategy<Value = RationalPath> {
    let comp = prop::option::weighted(0.85, (-6i64..=6, nonzero_rat(), prop::collection::vec(small_rat(), 0..=5)));
    (
        prop::collection::vec(comp, n),
        0..n,
        -6i64..=-1,
        nonzero_rat(),
        prop::collection::vec(small_rat(), 0..=5),
    )
        .prop_map(|(comps, i0, k, c0, rest)| {
            let mut cs: Vec<LaurentPoly> = comps
                .into_iter()
                .map(|c| c.map_or_else(LaurentPoly::zero, |(k, c0, rest)| unit_laurent(k, c0, rest)))
                .collect();
            cs[i0] = unit_laurent(k, c0, rest);
            RationalPath::new(cs).unwrap()
        })
}

fn identity_map(n: usize) -> RegularMap {
    RegularMap::polynomial(n, (0..n).map(|i| MPoly::var(n, i)).collect()).unwrap()
}

/// Text round trip of polynomial and regular maps, and ring identities.
pub fn polyring_roundtrips(cases: u32) -> Result<(), String> {
    let strat = (
        prop::collection::vec(nonzero_mpoly(2, 3, 5), 1..=3),
        mpoly(2, 2, 3),
        mpoly(2, 3, 4),
        mpoly(2, 3, 4),
        mpoly(2, 3, 4),
    );
    check(cases, strat, |(fs, extra, a, b, c)| {
        // 1 + x^2 + y^2 + extra^2 never vanishes on R^2
        let den = &(&MPoly::one(2) + &(&MPoly::var(2, 0).pow(2) + &MPoly::var(2, 1).pow(2))) + &extra.pow(2);
        for f in [
            RegularMap::polynomial(2, fs.clone()).unwrap(),
            RegularMap::new(den, fs).unwrap().reduce().unwrap(),
        ] {
            let back = parse_map(&f.to_text()).map_err(|e| TestCaseError::fail(e.to_string()))?;
            prop_assert_eq!(&back, &f, "{}", f.to_text());
        }
        prop_assert_eq!(&(&a + &b) * &c, &(&a * &c) + &(&b * &c));
        prop_assert_eq!(&(&(&a - &b) + &b), &a);
        prop_assert_eq!(a.pow(2), &a * &a);
        Ok(())
    })
}

/// `gcd(ac, bc)` is an associate of `gcd(a, b) c` and divides both products.
pub fn gcd_reconstruction(cases: u32) -> Result<(), String> {
    let strat = (mpoly(2, 2, 3), mpoly(2, 2, 3), nonzero_mpoly(2, 2, 3));
    check(cases, strat, |(a, b, c)| {
        prop_assume!(!(a.is_zero() && b.is_zero()));
        let (ac, bc) = (&a * &c, &b * &c);
        let g = gcd(&ac, &bc);
        prop_assert!(ac.div_exact(&g).is_some());
        prop_assert!(bc.div_exact(&g).is_some());
        prop_assert!(g.div_exact(&c).is_some());
        prop_assert!(associates(&g, &(&gcd(&a, &b) * &c)), "gcd {} vs {}", g, gcd(&a, &b));
        Ok(())
    })
}

/// Substitution of a Laurent path is a ring homomorphism and commutes with evaluation.
pub fn compose_path_homomorphism(cases: u32) -> Result<(), String> {
    let strat = (mpoly(2, 3, 4), mpoly(2, 3, 4), laurent(), laurent());
    check(cases, strat, |(p, q, a, b)| {
        let path = [a.clone(), b.clone()];
        let cp = compose_path(&p, &path).unwrap();
        let cq = compose_path(&q, &path).unwrap();
        prop_assert_eq!(compose_path(&(&p + &q), &path).unwrap(), &cp + &cq);
        prop_assert_eq!(compose_path(&(&p * &q), &path).unwrap(), &cp * &cq);
        let t = ratio(2, 3);
        prop_assert_eq!(cp.eval(&t), p.eval(&[a.eval(&t), b.eval(&t)]));
        Ok(())
    })
}

/// Projective points and limits do not depend on the representative.
pub fn projective_scaling(cases: u32) -> Result<(), String> {
    let strat = (
        prop::collection::vec(small_rat(), 2..=4),
        nonzero_rat(),
        prop::collection::vec(laurent(), 2..=4),
        -3i64..=3,
        0u64..1000,
        bridge_path(2),
        1u32..=3,
    );
    check(cases, strat, |(v, c, gs, shift, seed, path, s)| {
        if let Ok(p) = ProjPoint::normalize(&v) {
            let scaled: Vec<Rat> = v.iter().map(|x| x * &c).collect();
            prop_assert_eq!(ProjPoint::normalize(&scaled).unwrap(), p);
        }
        if let Ok(l) = tuple_limit(&gs) {
            let moved: Vec<LaurentPoly> = gs.iter().map(|g| g.scale(&c).shift(shift)).collect();
            prop_assert_eq!(tuple_limit(&moved).unwrap().point, l.point);
        }
        let f = random_polynomial_map(seed, 2, 2, 3);
        let a = path_limit(&f, &path).unwrap().point;
        let b = path_limit(&f, &path.reparametrize(s)).unwrap().point;
        prop_assert_eq!(a, b);
        Ok(())
    })
}

fn test_maps() -> Vec<RegularMap> {
    ["three-lines", "quarter-region", "hyperbola-branch", "cubic-over-quadric"]
        .iter()
        .map(|id| parse_map(corpus::find(id).unwrap().source()).unwrap())
        .collect()
}

/// Unit vector `(f0 : ... : fm)(alpha(1/q))`. The components are evaluated exactly and then
/// rounded; plain float evaluation loses everything to cancellation along lines where the
/// denominator of a map degenerates.
fn value_at(f: &RegularMap, path: &RationalPath, q: i64) -> Vec<f64> {
    let t = ratio(1, q);
    let x: Vec<Rat> = path.components().iter().map(|c| c.eval(&t)).collect();
    unit(f.components().iter().map(|p| rat_to_f64(&p.eval(&x))).collect())
}

fn unit(v: Vec<f64>) -> Vec<f64> {
    let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    v.iter().map(|x| x / n).collect()
}

/// Float check at small `t`: away from cancellation the library evaluator agrees too.
fn float_agrees(f: &RegularMap, path: &RationalPath, want: &[f64]) -> bool {
    antipodal_distance(&numeric_value(f, path, 1e-3), want) < 0.1
}

/// The exact limit agrees with the value of the map at `t = 1e-3` and `t = 1e-4`.
pub fn limit_vs_numeric(cases: u32) -> Result<(), String> {
    let fixed = test_maps();
    let comp = || (-2i64..=-1, nonzero_rat(), small_rat()).prop_map(|(k, c, e)| unit_laurent(k, c, vec![e]));
    let strat = (0usize..fixed.len() + 4, 0u64..1000, comp(), comp());
    check(cases, strat, |(which, seed, a, b)| {
        let f = fixed.get(which).cloned().unwrap_or_else(|| random_polynomial_map(seed, 2, 2, 3));
        let path = RationalPath::new(vec![a, b]).unwrap();
        let point = path_limit(&f, &path).unwrap().point;
        let want = unit(point.coords().iter().map(rat_to_f64).collect());
        let d3 = antipodal_distance(&value_at(&f, &path, 1000), &want);
        let d4 = antipodal_distance(&value_at(&f, &path, 10000), &want);
        prop_assert!(d4 < 0.02, "t = 1e-4: {d4} for {} along {}", f.to_text(), path.to_text());
        prop_assert!(d4 <= 0.5 * d3 + 1e-6, "no convergence: {d3} -> {d4}");
        if f.is_polynomial() {
            prop_assert!(float_agrees(&f, &path, &want));
        }
        Ok(())
    })
}

pub fn unit_vectors(dim: usize, max: usize) -> impl Strategy<Value = Vec<Vec<f64>>> {
    prop::collection::vec(prop::collection::vec(-1.0f64..1.0, dim), 1..=max).prop_map(|vs| {
        vs.into_iter()
            .filter_map(|v| {
                let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
                (n > 1e-3).then(|| v.iter().map(|x| x / n).collect())
            })
            .collect()
    })
}

/// Fewer components at a larger threshold; sign flips do not change the count.
pub fn eps_monotonicity(cases: u32) -> Result<(), String> {
    let strat = (2usize..=4)
        .prop_flat_map(|d| (unit_vectors(d, 60), 0.01f64..0.5, 0.0f64..0.5, prop::collection::vec(any::<bool>(), 60)));
    check(cases, strat, |(dirs, e1, de, flips)| {
        let c1 = component_count(&dirs, e1).len();
        let c2 = component_count(&dirs, e1 + de).len();
        prop_assert!(c2 <= c1, "{c1} at {e1}, {c2} at {}", e1 + de);
        let flipped: Vec<Vec<f64>> = dirs
            .iter()
            .zip(&flips)
            .map(|(u, &f)| if f { u.iter().map(|x| -x).collect() } else { u.clone() })
            .collect();
        prop_assert_eq!(component_count(&flipped, e1).len(), c1);
        Ok(())
    })
}

/// Brute-force connected components of the graph `d(u, v) <= eps`, as a label per point.
fn oracle_labels(dirs: &[Vec<f64>], eps: f64) -> Vec<usize> {
    let mut label = vec![usize::MAX; dirs.len()];
    let mut next = 0;
    for s in 0..dirs.len() {
        if label[s] != usize::MAX {
            continue;
        }
        let mut stack = vec![s];
        label[s] = next;
        while let Some(i) = stack.pop() {
            for j in 0..dirs.len() {
                if label[j] == usize::MAX && antipodal_distance(&dirs[i], &dirs[j]) <= eps {
                    label[j] = next;
                    stack.push(j);
                }
            }
        }
        next += 1;
    }
    label
}

/// Clusters are exactly the components of the antipodal `eps`-graph.
pub fn antipodal_soundness(cases: u32) -> Result<(), String> {
    let strat = prop_oneof![Just(2usize), Just(3), Just(4), Just(7)]
        .prop_flat_map(|d| (unit_vectors(d, 80), 0.02f64..0.6));
    check(cases, strat, |(dirs, eps)| {
        let got = component_labels(&dirs, eps);
        let want = oracle_labels(&dirs, eps);
        for i in 0..dirs.len() {
            for j in 0..i {
                prop_assert_eq!(got[i] == got[j], want[i] == want[j], "points {} and {}", i, j);
            }
        }
        Ok(())
    })
}

/// `h(t, 1/t) = alpha`, `h(t, -1/t) = beta`, checked against the input paths directly.
pub fn bridge_identities(cases: u32) -> Result<(), String> {
    let strat = (1usize..=4).prop_flat_map(|n| (bridge_path(n), bridge_path(n)));
    check(cases, strat, |(alpha, beta)| {
        let n = alpha.len();
        let na = normalize_path(&alpha, Target::Simple).unwrap();
        let nb = normalize_path(&beta, Target::Simple).unwrap();
        let res = build_bridge(&identity_map(n), &na, &nb).unwrap();
        let plus = [LaurentPoly::monomial(1, ratio(1, 1)), LaurentPoly::monomial(-1, ratio(1, 1))];
        let minus = [LaurentPoly::monomial(1, ratio(1, 1)), LaurentPoly::monomial(-1, ratio(-1, 1))];
        for (i, h) in res.h.fs().iter().enumerate() {
            prop_assert_eq!(&compose_path(h, &plus).unwrap(), &alpha.components()[i]);
            prop_assert_eq!(&compose_path(h, &minus).unwrap(), &beta.components()[i]);
        }
        prop_assert!(res.all_passed(), "{:?}", res.checks);
        Ok(())
    })
}

pub type Suite = fn(u32) -> Result<(), String>;

pub const SUITES: &[(&str, Suite)] = &[
    ("polyring round trips", polyring_roundtrips),
    ("gcd reconstruction", gcd_reconstruction),
    ("compose_path homomorphism", compose_path_homomorphism),
    ("projective scaling invariance", projective_scaling),
    ("limit vs numeric at t = 1e-3, 1e-4", limit_vs_numeric),
    ("eps monotonicity", eps_monotonicity),
    ("antipodal soundness", antipodal_soundness),
];
