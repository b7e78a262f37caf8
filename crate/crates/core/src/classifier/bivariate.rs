//! Exact real solving in one and two variables.
//!
//! Curves are tested for real points by a cylindrical sweep over the discriminant;
//! zero-dimensional systems are solved by resultant elimination in generic position,
//! with the `y` coordinate read off the first subresultant.

use num_traits::{One, Zero};

use super::interval::Iv;
use crate::polyring::gcd::{gcd_all, quick_coprime, squarefree};
use crate::polyring::univariate::{cell_samples, real_roots, RealRoot};
use crate::polyring::{gcd, rat, MPoly, Rat, UPoly};

/// Outcome of an affine search.
#[derive(Clone, Debug, PartialEq)]
pub enum Affine {
    Empty,
    Point(Vec<RealRoot>),
    Unknown(String),
}

/// Number of shears tried before giving up.
const MAX_SHEARS: usize = 20;
/// Generic-position failures tolerated before answering Unknown.
const MAX_GENERIC_FAILURES: usize = 3;

fn shear_values() -> impl Iterator<Item = Rat> {
    (0..MAX_SHEARS as i64).map(|i| {
        let k = (i + 1) / 2;
        rat(if i % 2 == 1 { k } else { -k })
    })
}

/// Points `0, 1, -1, 2, -2, ...`
fn sample_points() -> impl Iterator<Item = Rat> {
    (0i64..).map(|i| {
        let k = (i + 1) / 2;
        rat(if i % 2 == 1 { k } else { -k })
    })
}

pub fn solve_univariate(polys: &[MPoly]) -> Affine {
    let us: Vec<UPoly> = polys
        .iter()
        .filter(|p| !p.is_zero())
        .map(|p| UPoly::from_mpoly(p, 0).expect("univariate"))
        .collect();
    let Some(first) = us.first() else {
        return Affine::Point(vec![RealRoot::Exact(Rat::zero())]);
    };
    let g = us[1..].iter().fold(first.clone(), |g, u| g.gcd(u));
    match real_roots(&g).into_iter().next() {
        Some(r) => Affine::Point(vec![r]),
        None => Affine::Empty,
    }
}

/// Real common zeros of polynomials in `x, y`.
pub fn solve_bivariate(polys: &[MPoly]) -> Affine {
    let mut ps: Vec<MPoly> = polys
        .iter()
        .filter(|p| !p.is_zero())
        .map(squarefree)
        .collect();
    if ps.is_empty() {
        return Affine::Point(vec![RealRoot::Exact(Rat::zero()); 2]);
    }
    if ps.iter().any(MPoly::is_constant) {
        return Affine::Empty;
    }
    dedup(&mut ps);
    // The first input (the denominator factor, for the classifier) usually has no real
    // points at all, and the lowest-degree curve is the cheapest to sweep.
    let lowest = (0..ps.len())
        .min_by_key(|&i| (ps[i].total_degree().unwrap(), ps[i].num_terms()))
        .unwrap();
    let mut tested = vec![0];
    if lowest != 0 {
        tested.push(lowest);
    }
    for &i in &tested {
        match curve_point(&ps[i]) {
            Affine::Empty => return Affine::Empty,
            Affine::Point(p) if ps.len() == 1 => return Affine::Point(p),
            _ => {}
        }
    }
    if ps.len() == 1 {
        return curve_point(&ps[0]);
    }
    let g = gcd_all(&ps, 2);
    if !g.is_constant() {
        match curve_point(&g) {
            Affine::Empty => {}
            other => return other,
        }
        ps = ps
            .iter()
            .map(|p| p.div_exact(&g).expect("gcd divides"))
            .collect();
        if ps.iter().any(MPoly::is_constant) {
            return Affine::Empty;
        }
    }
    let Some((a, b)) = coprime_pair(&ps) else {
        return Affine::Unknown("no coprime pair found among the equations".into());
    };
    zero_dim(&a, &b, &ps)
}

fn dedup(ps: &mut Vec<MPoly>) {
    let mut out: Vec<MPoly> = Vec::new();
    for p in ps.drain(..) {
        if !out.contains(&p) {
            out.push(p);
        }
    }
    *ps = out;
}

/// Two coprime members of the ideal whose common zeros contain those of `ps`.
fn coprime_pair(ps: &[MPoly]) -> Option<(MPoly, MPoly)> {
    let coprime = |a: &MPoly, b: &MPoly| quick_coprime(a, b) || gcd(a, b).is_constant();
    for i in 0..ps.len() {
        for j in i + 1..ps.len() {
            if coprime(&ps[i], &ps[j]) {
                return Some((ps[i].clone(), ps[j].clone()));
            }
        }
    }
    // Pairwise common factors but no common factor overall: combine the rest.
    for k in 1..=8i64 {
        let mut b = MPoly::zero(2);
        for (j, p) in ps.iter().enumerate().skip(1) {
            b = &b + &p.scale(&rat(k.pow(j as u32)));
        }
        if coprime(&ps[0], &b) {
            return Some((ps[0].clone(), b));
        }
    }
    None
}

/// `p(x + c y, y)`
fn shear(p: &MPoly, c: &Rat) -> MPoly {
    if c.is_zero() {
        return p.clone();
    }
    let x = &MPoly::var(2, 0) + &MPoly::var(2, 1).scale(c);
    p.substitute(&[x, MPoly::var(2, 1)]).expect("two variables")
}

/// Coefficients in `y` as polynomials in `x`, if the leading one is a nonzero constant
/// and `deg_y` equals the total degree.
fn y_coeffs_monic(p: &MPoly) -> Option<Vec<UPoly>> {
    let cs = y_coeffs(p);
    let d = p.total_degree().finite()? as usize;
    (cs.len() == d + 1 && cs[d].degree() == Some(0)).then_some(cs)
}

fn y_coeffs(p: &MPoly) -> Vec<UPoly> {
    p.coeffs_in(1)
        .iter()
        .map(|c| UPoly::from_mpoly(c, 0).expect("only x left"))
        .collect()
}

fn eval_coeffs(cs: &[UPoly], x: &Rat) -> UPoly {
    UPoly::new(cs.iter().map(|c| c.eval(x)).collect())
}

/// Undoes `shear(.., c)` on a point: `x = x' + c y'`.
fn unshear(x: RealRoot, y: RealRoot, c: &Rat) -> Vec<RealRoot> {
    if c.is_zero() {
        return vec![x, y];
    }
    let x = match (&x, &y) {
        (RealRoot::Exact(a), RealRoot::Exact(b)) => RealRoot::Exact(a + c * b),
        _ => {
            let iv = to_iv(&x).add(&to_iv(&y).scale(c));
            RealRoot::Interval {
                lo: iv.lo,
                hi: iv.hi,
            }
        }
    };
    vec![x, y]
}

pub fn to_iv(r: &RealRoot) -> Iv {
    match r {
        RealRoot::Exact(a) => Iv::point(a.clone()),
        RealRoot::Interval { lo, hi } => Iv::new(lo.clone(), hi.clone()),
    }
}

/// A real point of the curve `g = 0` (`g` squarefree and nonconstant), or Empty.
pub fn curve_point(g: &MPoly) -> Affine {
    for c in shear_values() {
        let gs = shear(g, &c);
        let Some(cs) = y_coeffs_monic(&gs) else {
            continue;
        };
        let p = cs.len() - 1;
        if p == 1 {
            // a graph over the x-axis
            let y = -cs[0].eval(&Rat::zero()) / cs[1].lc();
            return Affine::Point(unshear(
                RealRoot::Exact(Rat::zero()),
                RealRoot::Exact(y),
                &c,
            ));
        }
        let gy = gs.derivative(1);
        let dcs = y_coeffs(&gy);
        let Some(el) = eliminate(&cs, &dcs, false) else {
            continue;
        };
        if el.r.is_zero() {
            continue;
        }
        // The number of real roots in y is constant over each open cell of the
        // discriminant, so one sample per cell decides the regular part.
        for xs in cell_samples(&real_roots(&el.r)) {
            let u = eval_coeffs(&cs, &xs);
            if let Some(y) = real_roots(&u).into_iter().next() {
                return Affine::Point(unshear(RealRoot::Exact(xs), y, &c));
            }
        }
        // Remaining real points would be isolated, hence singular.
        let gx = gs.derivative(0);
        let sys = [gs.clone(), gx, gy.clone()];
        return match zero_dim(&gs, &gy, &sys) {
            Affine::Point(pt) => {
                let mut it = pt.into_iter();
                let (x, y) = (it.next().unwrap(), it.next().unwrap());
                Affine::Point(unshear(x, y, &c))
            }
            other => other,
        };
    }
    Affine::Unknown("no shear gives a curve with constant leading coefficient in y".into())
}

/// Real common zeros of `all`, given coprime `a`, `b` among its consequences.
pub fn zero_dim(a: &MPoly, b: &MPoly, all: &[MPoly]) -> Affine {
    let mut generic_failures = 0;
    for c in shear_values() {
        let (sa, sb) = (shear(a, &c), shear(b, &c));
        let (Some(ca), Some(cb)) = (y_coeffs_monic(&sa), y_coeffs_monic(&sb)) else {
            continue;
        };
        if ca.len() == 1 || cb.len() == 1 {
            return Affine::Empty;
        }
        let Some(el) = eliminate(&ca, &cb, true) else {
            generic_failures += 1;
            if generic_failures >= MAX_GENERIC_FAILURES {
                break;
            }
            continue;
        };
        if el.r.is_zero() {
            return Affine::Unknown("resultant vanishes identically".into());
        }
        let rs = el.r.squarefree();
        if rs.degree() == Some(0) {
            return Affine::Empty;
        }
        if rs.gcd(&el.s1).degree() != Some(0) {
            generic_failures += 1;
            if generic_failures >= MAX_GENERIC_FAILURES {
                break;
            }
            continue;
        }
        // y = -s0/s1 over every root of rs; keep the roots where all equations vanish.
        let mut w = rs.clone();
        let neg_s0 = (-&el.s0).rem(&rs);
        let s1 = el.s1.rem(&rs);
        for p in all {
            let sp = shear(p, &c);
            let cs = y_coeffs(&sp);
            let Some(dp) = cs.len().checked_sub(1) else {
                continue;
            };
            // N = sum_k c_k(x) (-s0)^k s1^(dp-k)  mod rs
            let mut pow_n = vec![UPoly::constant(Rat::one())];
            let mut pow_s = vec![UPoly::constant(Rat::one())];
            for k in 1..=dp {
                pow_n.push((&pow_n[k - 1] * &neg_s0).rem(&rs));
                pow_s.push((&pow_s[k - 1] * &s1).rem(&rs));
            }
            let mut acc = UPoly::zero();
            for (k, ck) in cs.iter().enumerate() {
                let t = &(ck * &pow_n[k]) * &pow_s[dp - k];
                acc = &acc + &t.rem(&rs);
            }
            w = w.gcd(&acc.rem(&rs));
            if w.degree() == Some(0) {
                return Affine::Empty;
            }
        }
        let Some(root) = real_roots(&w).into_iter().next() else {
            return Affine::Empty;
        };
        let (x, y) = match back_substitute(&w, root, &el.s0, &el.s1) {
            Some(xy) => xy,
            None => return Affine::Unknown("could not separate the y coordinate".into()),
        };
        return Affine::Point(unshear(x, y, &c));
    }
    Affine::Unknown(format!(
        "no shear in generic position after {generic_failures} degenerate attempts"
    ))
}

/// `y = -s0(x)/s1(x)` at a root of `w`, refining the isolating interval until `s1` is
/// bounded away from zero.
fn back_substitute(w: &UPoly, x: RealRoot, s0: &UPoly, s1: &UPoly) -> Option<(RealRoot, RealRoot)> {
    match x {
        RealRoot::Exact(x) => {
            let y = -s0.eval(&x) / s1.eval(&x);
            Some((RealRoot::Exact(x), RealRoot::Exact(y)))
        }
        RealRoot::Interval { mut lo, mut hi } => {
            let s_hi = w.sign_at(&hi);
            for _ in 0..200 {
                let xi = Iv::new(lo.clone(), hi.clone());
                if let Some(y) = Iv::eval(s0, &xi).neg().div(&Iv::eval(s1, &xi)) {
                    return Some((
                        RealRoot::Interval { lo, hi },
                        RealRoot::Interval { lo: y.lo, hi: y.hi },
                    ));
                }
                let mid = (&lo + &hi) / rat(2);
                let s = w.sign_at(&mid);
                if s == 0 {
                    let y = -s0.eval(&mid) / s1.eval(&mid);
                    return Some((RealRoot::Exact(mid), RealRoot::Exact(y)));
                }
                if s == s_hi {
                    hi = mid;
                } else {
                    lo = mid;
                }
            }
            None
        }
    }
}

/// Resultant data of two polynomials in `y` whose leading coefficients are constants.
pub struct Elimination {
    pub r: UPoly,
    pub s1: UPoly,
    pub s0: UPoly,
}

/// Computes the resultant (and optionally the first subresultant `s1 y + s0`) by
/// evaluating at integer points where the remainder sequence is normal and interpolating.
pub fn eliminate(a: &[UPoly], b: &[UPoly], with_subresultant: bool) -> Option<Elimination> {
    let (a, b) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    let p = a.len() - 1;
    let q = b.len() - 1;
    debug_assert!(q >= 1);
    // x-degrees are bounded by the total degrees p and q
    let bound_r = p * q;
    let bound_s = (q - 1) * p + (p - 1) * q;
    let npts = if with_subresultant { bound_r.max(bound_s) } else { bound_r } + 1;
    let (mut xs, mut rv, mut s1v, mut s0v) = (Vec::new(), Vec::new(), Vec::new(), Vec::new());
    let mut bad = 0usize;
    for x in sample_points() {
        if xs.len() == npts {
            break;
        }
        let prs = subresultant_prs(&eval_coeffs(a, &x), &eval_coeffs(b, &x));
        let normal = prs.len() == q + 2
            && prs[1..]
                .iter()
                .enumerate()
                .all(|(i, r)| r.degree() == Some(q - i));
        if !normal {
            bad += 1;
            if bad > npts.max(20) {
                return None;
            }
            continue;
        }
        rv.push(prs[q + 1].lc());
        s1v.push(prs[q].coeffs()[1].clone());
        s0v.push(prs[q].coeffs()[0].clone());
        xs.push(x);
    }
    let r = UPoly::interpolate(&xs, &rv);
    let (s1, s0) = if with_subresultant {
        (UPoly::interpolate(&xs, &s1v), UPoly::interpolate(&xs, &s0v))
    } else {
        (UPoly::zero(), UPoly::zero())
    };
    Some(Elimination { r, s1, s0 })
}

/// `lc(g)^(deg f - deg g + 1) f mod g`
fn prem(f: &UPoly, g: &UPoly) -> UPoly {
    let delta = f.degree().unwrap() - g.degree().unwrap();
    let k = num_traits::pow(g.lc(), delta + 1);
    f.scale(&k).rem(g)
}

/// Subresultant remainder sequence of `f`, `g` with `deg f >= deg g >= 1`.
fn subresultant_prs(f: &UPoly, g: &UPoly) -> Vec<UPoly> {
    let n = f.degree().unwrap();
    let mut m = g.degree().unwrap();
    let d = n - m;
    let mut out = vec![f.clone(), g.clone()];
    let sign = if (d + 1).is_multiple_of(2) { rat(1) } else { rat(-1) };
    let mut h = prem(f, g).scale(&sign);
    let mut lc = g.lc();
    let mut c = -num_traits::pow(lc.clone(), d);
    let mut g = g.clone();
    while !h.is_zero() {
        let k = h.degree().unwrap();
        out.push(h.clone());
        let dd = m - k;
        let f = std::mem::replace(&mut g, h);
        m = k;
        let b = -(&lc * num_traits::pow(c.clone(), dd));
        if g.degree() == Some(0) {
            break;
        }
        h = prem(&f, &g).scale(&b.recip());
        lc = g.lc();
        c = if dd > 1 {
            num_traits::pow(-lc.clone(), dd) / num_traits::pow(c.clone(), dd - 1)
        } else {
            -lc.clone()
        };
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_map;

    fn poly(s: &str) -> MPoly {
        parse_map(&format!("map R^2 -> R^1 : ({s})")).unwrap().fs()[0].clone()
    }

    #[test]
    fn resultant_by_interpolation() {
        // Res_y(y^2 - x, y - x) = x^2 - x
        let a = y_coeffs(&poly("y^2 - x"));
        let b = y_coeffs(&poly("y - x"));
        let el = eliminate(&a, &b, true).unwrap();
        let r = el.r.monic();
        assert_eq!(r, UPoly::new(vec![rat(0), rat(-1), rat(1)]));
    }

    #[test]
    fn curves() {
        assert_eq!(curve_point(&poly("x^2 + y^2 + 1")), Affine::Empty);
        assert!(matches!(curve_point(&poly("x^2 + y^2 - 2")), Affine::Point(_)));
        // isolated real point at the origin
        let p = curve_point(&poly("x^2 + y^2"));
        assert_eq!(
            p,
            Affine::Point(vec![RealRoot::Exact(rat(0)), RealRoot::Exact(rat(0))])
        );
        assert_eq!(curve_point(&poly("(x^2 + 1)*(y^2 + 1)")), Affine::Empty);
    }

    #[test]
    fn systems() {
        let sys = [poly("x^2 + y^2 - 2"), poly("x - y")];
        match solve_bivariate(&sys) {
            Affine::Point(pt) => {
                let x = pt[0].exact().unwrap();
                assert_eq!(x * x, rat(1));
            }
            other => panic!("{other:?}"),
        }
        let sys = [poly("x^2 + y^2 - 1"), poly("x - 2")];
        assert_eq!(solve_bivariate(&sys), Affine::Empty);
        let sys = [poly("(1 + x^4)*y"), poly("(1 + y^4)*x"), poly("(1+x^4)*(1+y^4)")];
        assert_eq!(solve_bivariate(&sys), Affine::Empty);
        // irrational witness
        let sys = [poly("x^2 + y^2 - 1"), poly("x - y")];
        match solve_bivariate(&sys) {
            Affine::Point(pt) => assert!(pt[0].exact().is_none()),
            other => panic!("{other:?}"),
        }
    }
}
