//! Dense univariate polynomials over the rationals: Euclid, Sturm sequences,
//! real-root isolation and interpolation.

use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::mpoly::MPoly;
use super::rational::{rat, simplest_between, Rat};

/// Coefficients in increasing degree; no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct UPoly {
    c: Vec<Rat>,
}

impl UPoly {
    pub fn new(mut c: Vec<Rat>) -> Self {
        while c.last().is_some_and(Zero::is_zero) {
            c.pop();
        }
        UPoly { c }
    }

    pub fn zero() -> Self {
        UPoly { c: Vec::new() }
    }

    pub fn constant(a: Rat) -> Self {
        UPoly::new(vec![a])
    }

    /// `x - a`
    pub fn linear_root(a: Rat) -> Self {
        UPoly::new(vec![-a, Rat::one()])
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn lc(&self) -> Rat {
        self.c.last().cloned().unwrap_or_else(Rat::zero)
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for a in self.c.iter().rev() {
            acc = acc * x + a;
        }
        acc
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        use super::rational::rat_to_f64;
        self.c.iter().rev().fold(0.0, |acc, a| acc * x + rat_to_f64(a))
    }

    pub fn sign_at(&self, x: &Rat) -> i32 {
        let v = self.eval(x);
        if v.is_zero() {
            0
        } else if v.is_positive() {
            1
        } else {
            -1
        }
    }

    pub fn scale(&self, a: &Rat) -> UPoly {
        UPoly::new(self.c.iter().map(|x| x * a).collect())
    }

    pub fn monic(&self) -> UPoly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.lc().recip())
    }

    pub fn derivative(&self) -> UPoly {
        UPoly::new(
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, a)| a * rat(i as i64))
                .collect(),
        )
    }

    pub fn divrem(&self, d: &UPoly) -> (UPoly, UPoly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let dd = d.c.len() - 1;
        let lc = d.lc();
        let mut r = self.c.clone();
        if r.len() <= dd {
            return (UPoly::zero(), self.clone());
        }
        let mut q = vec![Rat::zero(); r.len() - dd];
        for i in (0..q.len()).rev() {
            let coef = &r[i + dd] / &lc;
            if !coef.is_zero() {
                for (j, b) in d.c.iter().enumerate() {
                    r[i + j] -= &coef * b;
                }
            }
            q[i] = coef;
        }
        r.truncate(dd);
        (UPoly::new(q), UPoly::new(r))
    }

    pub fn rem(&self, d: &UPoly) -> UPoly {
        self.divrem(d).1
    }

    /// Exact quotient; panics if the remainder is nonzero.
    pub fn div_exact(&self, d: &UPoly) -> UPoly {
        let (q, r) = self.divrem(d);
        assert!(r.is_zero(), "inexact univariate division");
        q
    }

    /// Monic gcd (zero only when both inputs are zero).
    pub fn gcd(&self, other: &UPoly) -> UPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    /// Monic squarefree part.
    pub fn squarefree(&self) -> UPoly {
        if self.degree().unwrap_or(0) == 0 {
            return if self.is_zero() {
                UPoly::zero()
            } else {
                UPoly::constant(Rat::one())
            };
        }
        let g = self.gcd(&self.derivative());
        self.div_exact(&g).monic()
    }

    pub fn pow(&self, mut e: u32) -> UPoly {
        let mut base = self.clone();
        let mut acc = UPoly::constant(Rat::one());
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Embeds as an element of a polynomial ring in `nvars` variables, in variable `var`.
    pub fn to_mpoly(&self, nvars: usize, var: usize) -> MPoly {
        MPoly::from_terms(
            nvars,
            self.c.iter().enumerate().map(|(i, a)| {
                let mut e = vec![0; nvars];
                e[var] = i as u32;
                (e, a.clone())
            }),
        )
    }

    /// Reads a polynomial that only involves variable `var`.
    pub fn from_mpoly(p: &MPoly, var: usize) -> Option<UPoly> {
        let mut c = Vec::new();
        for (m, a) in p.terms() {
            if m.0.iter().enumerate().any(|(i, &e)| i != var && e > 0) {
                return None;
            }
            let k = m.0[var] as usize;
            if c.len() <= k {
                c.resize(k + 1, Rat::zero());
            }
            c[k] = a.clone();
        }
        Some(UPoly::new(c))
    }

    /// Cauchy bound: every real root lies in `(-b, b)`.
    pub fn root_bound(&self) -> Rat {
        let lc = self.lc().abs();
        let m = self.c[..self.c.len() - 1]
            .iter()
            .map(|a| a.abs() / &lc)
            .fold(Rat::zero(), |a, b| if b > a { b } else { a });
        m + Rat::one()
    }

    /// Newton interpolation through `(xs[i], ys[i])` with distinct `xs`.
    pub fn interpolate(xs: &[Rat], ys: &[Rat]) -> UPoly {
        assert_eq!(xs.len(), ys.len());
        let n = xs.len();
        let mut dd: Vec<Rat> = ys.to_vec();
        for j in 1..n {
            for i in (j..n).rev() {
                dd[i] = (&dd[i] - &dd[i - 1]) / (&xs[i] - &xs[i - j]);
            }
        }
        let mut acc = UPoly::zero();
        for i in (0..n).rev() {
            acc = &(&acc * &UPoly::linear_root(xs[i].clone())) + &UPoly::constant(dd[i].clone());
        }
        acc
    }
}

impl Add for &UPoly {
    type Output = UPoly;
    fn add(self, rhs: &UPoly) -> UPoly {
        let n = self.c.len().max(rhs.c.len());
        let z = Rat::zero();
        UPoly::new(
            (0..n)
                .map(|i| self.c.get(i).unwrap_or(&z) + rhs.c.get(i).unwrap_or(&z))
                .collect(),
        )
    }
}

impl Sub for &UPoly {
    type Output = UPoly;
    fn sub(self, rhs: &UPoly) -> UPoly {
        self + &(-rhs)
    }
}

impl Neg for &UPoly {
    type Output = UPoly;
    fn neg(self) -> UPoly {
        UPoly::new(self.c.iter().map(|a| -a).collect())
    }
}

impl Mul for &UPoly {
    type Output = UPoly;
    fn mul(self, rhs: &UPoly) -> UPoly {
        if self.is_zero() || rhs.is_zero() {
            return UPoly::zero();
        }
        let mut out = vec![Rat::zero(); self.c.len() + rhs.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.c.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UPoly::new(out)
    }
}

/// Sturm sequence of a squarefree polynomial.
#[derive(Clone, Debug)]
pub struct Sturm {
    seq: Vec<UPoly>,
}

impl Sturm {
    pub fn new(p: &UPoly) -> Self {
        let mut seq = vec![p.clone(), p.derivative()];
        while !seq.last().unwrap().is_zero() {
            let n = seq.len();
            let r = seq[n - 2].rem(&seq[n - 1]);
            // Only the sign pattern matters: keep the remainder small by making it monic
            // up to the required negation.
            let r = if r.is_zero() {
                r
            } else {
                let lc = r.lc().abs();
                (-&r).scale(&lc.recip())
            };
            seq.push(r);
        }
        seq.pop();
        Sturm { seq }
    }

    fn variations_at(&self, x: &Rat) -> usize {
        count_variations(self.seq.iter().map(|p| p.sign_at(x)))
    }

    fn variations_at_inf(&self, positive: bool) -> usize {
        count_variations(self.seq.iter().map(|p| {
            let s = if p.lc().is_positive() { 1 } else { -1 };
            let odd = p.degree().unwrap_or(0) % 2 == 1;
            if !positive && odd {
                -s
            } else {
                s
            }
        }))
    }

    /// Number of distinct real roots in the half-open interval `(a, b]`.
    pub fn count(&self, a: &Rat, b: &Rat) -> usize {
        self.variations_at(a).saturating_sub(self.variations_at(b))
    }

    pub fn count_all(&self) -> usize {
        self.variations_at_inf(false)
            .saturating_sub(self.variations_at_inf(true))
    }
}

fn count_variations(signs: impl Iterator<Item = i32>) -> usize {
    let mut last = 0;
    let mut n = 0;
    for s in signs {
        if s == 0 {
            continue;
        }
        if last != 0 && s != last {
            n += 1;
        }
        last = s;
    }
    n
}

/// A real root of a squarefree polynomial: either exact, or isolated in `(lo, hi)`
/// where the polynomial changes sign.
#[derive(Clone, Debug, PartialEq)]
pub enum RealRoot {
    Exact(Rat),
    Interval { lo: Rat, hi: Rat },
}

impl RealRoot {
    pub fn approx(&self) -> Rat {
        match self {
            RealRoot::Exact(r) => r.clone(),
            RealRoot::Interval { lo, hi } => (lo + hi) / rat(2),
        }
    }

    pub fn exact(&self) -> Option<&Rat> {
        match self {
            RealRoot::Exact(r) => Some(r),
            RealRoot::Interval { .. } => None,
        }
    }
}

/// Width to which irrational roots are refined.
pub fn isolation_width() -> Rat {
    Rat::new(BigInt::one(), BigInt::one() << 40usize)
}

/// Isolates all real roots of `p` in increasing order. Rational roots are recognized
/// exactly; irrational ones come back as intervals of width at most 2^-40.
pub fn real_roots(p: &UPoly) -> Vec<RealRoot> {
    let sq = p.squarefree();
    if sq.degree().unwrap_or(0) == 0 {
        return Vec::new();
    }
    let sturm = Sturm::new(&sq);
    let b = sq.root_bound();
    let mut pending = vec![(-b.clone(), b)];
    let mut isolated = Vec::new();
    while let Some((lo, hi)) = pending.pop() {
        let n = sturm.count(&lo, &hi);
        if n == 0 {
            continue;
        }
        if n == 1 {
            isolated.push((lo, hi));
            continue;
        }
        let mid = (&lo + &hi) / rat(2);
        pending.push((lo, mid.clone()));
        pending.push((mid, hi));
    }
    isolated.sort_by(|a, b| a.0.cmp(&b.0));
    isolated
        .into_iter()
        .map(|(lo, hi)| refine(&sq, lo, hi))
        .collect()
}

/// Refines a root of squarefree `p` isolated in `(lo, hi]`.
fn refine(p: &UPoly, mut lo: Rat, mut hi: Rat) -> RealRoot {
    if p.sign_at(&hi) == 0 {
        return RealRoot::Exact(hi);
    }
    // Try a cheap rational guess before bisecting.
    let guess = simplest_between(&lo, &hi);
    if guess != lo && p.sign_at(&guess) == 0 {
        return RealRoot::Exact(guess);
    }
    let width = isolation_width();
    // exactly one simple root inside, so the sign just right of lo is opposite to sign(hi)
    let s_hi = p.sign_at(&hi);
    let mut s_lo = -s_hi;
    while &hi - &lo > width || p.sign_at(&lo) == 0 {
        let mid = (&lo + &hi) / rat(2);
        let s = p.sign_at(&mid);
        if s == 0 {
            return RealRoot::Exact(mid);
        }
        if s == s_lo {
            lo = mid;
            s_lo = s;
        } else {
            hi = mid;
        }
    }
    let guess = simplest_between(&lo, &hi);
    if p.sign_at(&guess) == 0 {
        return RealRoot::Exact(guess);
    }
    RealRoot::Interval { lo, hi }
}

/// A rational point strictly inside each open cell cut out by the sorted roots
/// (including the two unbounded cells).
pub fn cell_samples(roots: &[RealRoot]) -> Vec<Rat> {
    if roots.is_empty() {
        return vec![Rat::zero()];
    }
    let lower = |r: &RealRoot| match r {
        RealRoot::Exact(x) => x.clone(),
        RealRoot::Interval { lo, .. } => lo.clone(),
    };
    let upper = |r: &RealRoot| match r {
        RealRoot::Exact(x) => x.clone(),
        RealRoot::Interval { hi, .. } => hi.clone(),
    };
    let mut out = vec![lower(&roots[0]).floor() - Rat::one()];
    for w in roots.windows(2) {
        let a = upper(&w[0]);
        let b = lower(&w[1]);
        // isolating intervals are disjoint; pick the simplest point strictly between
        let eps = (&b - &a) / rat(4);
        out.push(simplest_between(&(&a + &eps), &(&b - &eps)));
    }
    out.push(upper(roots.last().unwrap()).ceil() + Rat::one());
    out
}

/// Convenience: a univariate `MPoly` in one variable as a `UPoly`.
pub fn mpoly_to_upoly(p: &MPoly) -> UPoly {
    assert_eq!(p.nvars(), 1);
    UPoly::from_mpoly(p, 0).unwrap()
}

pub fn upoly_to_mpoly(p: &UPoly) -> MPoly {
    MPoly::from_terms(
        1,
        p.coeffs()
            .iter()
            .enumerate()
            .map(|(i, a)| (vec![i as u32], a.clone())),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::rational::ratio;

    fn up(c: &[i64]) -> UPoly {
        UPoly::new(c.iter().map(|&a| rat(a)).collect())
    }

    #[test]
    fn euclid() {
        // x^2 - 1 and x^2 + 2x + 1 share x + 1
        assert_eq!(up(&[-1, 0, 1]).gcd(&up(&[1, 2, 1])), up(&[1, 1]));
        assert_eq!(up(&[1, 1]).gcd(&up(&[2, 1])), up(&[1]));
        assert_eq!(up(&[1, 2, 1]).squarefree(), up(&[1, 1]));
    }

    #[test]
    fn sturm_counts() {
        let p = up(&[-2, 0, 1]); // x^2 - 2
        let s = Sturm::new(&p);
        assert_eq!(s.count_all(), 2);
        assert_eq!(s.count(&rat(0), &rat(2)), 1);
        assert_eq!(Sturm::new(&up(&[1, 0, 1])).count_all(), 0);
    }

    #[test]
    fn isolation() {
        // (x - 1/3)(x^2 - 2)
        let p = &up(&[-1, 3]) * &up(&[-2, 0, 1]);
        let roots = real_roots(&p);
        assert_eq!(roots.len(), 3);
        assert_eq!(roots[1], RealRoot::Exact(ratio(1, 3)));
        match &roots[2] {
            RealRoot::Interval { lo, hi } => {
                assert!(lo * lo < rat(2) && hi * hi > rat(2));
                assert!(hi - lo <= isolation_width());
            }
            other => panic!("expected interval, got {other:?}"),
        }
        let cells = cell_samples(&roots);
        assert_eq!(cells.len(), 4);
        assert!(cells.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn newton_interpolation() {
        let p = up(&[3, -1, 0, 2]);
        let xs: Vec<Rat> = (0..4).map(rat).collect();
        let ys: Vec<Rat> = xs.iter().map(|x| p.eval(x)).collect();
        assert_eq!(UPoly::interpolate(&xs, &ys), p);
    }
}
