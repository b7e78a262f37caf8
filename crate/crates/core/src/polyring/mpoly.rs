//! Sparse multivariate polynomials with exact rational coefficients.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::rational::{denominators_lcm, numerators_gcd, rat_to_f64, Rat};
use crate::error::{Error, Result};

/// Exponent vector. Ordered graded-lexicographically: total degree first, then
/// lexicographic with `x1 > x2 > ...`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    fn div(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Degree of a polynomial; the zero polynomial has degree minus infinity.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Hash)]
pub enum Degree {
    MinusInfinity,
    Finite(u32),
}

impl Degree {
    pub fn finite(self) -> Option<u32> {
        match self {
            Degree::Finite(d) => Some(d),
            Degree::MinusInfinity => None,
        }
    }

    /// Panics on the zero-polynomial sentinel; callers must rule it out first.
    pub fn unwrap(self) -> u32 {
        self.finite().expect("degree of the zero polynomial")
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::Finite(d) => write!(f, "{d}"),
            Degree::MinusInfinity => write!(f, "-inf"),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct MPoly {
    nvars: usize,
    terms: BTreeMap<Monomial, Rat>,
}

impl MPoly {
    pub fn zero(nvars: usize) -> Self {
        MPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Rat) -> Self {
        let mut p = MPoly::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(nvars), c);
        }
        p
    }

    pub fn one(nvars: usize) -> Self {
        MPoly::constant(nvars, Rat::one())
    }

    /// The variable `x_i` (0-based index).
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        MPoly::monomial(Monomial(e), Rat::one())
    }

    pub fn monomial(m: Monomial, c: Rat) -> Self {
        let nvars = m.0.len();
        let mut p = MPoly::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Vec<u32>, Rat)>) -> Self {
        let mut p = MPoly::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent vector length");
            p.add_term(Monomial(e), c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| m.degree() == 0)
    }

    /// Value of a constant polynomial (zero for the zero polynomial).
    pub fn constant_value(&self) -> Option<Rat> {
        if self.is_zero() {
            Some(Rat::zero())
        } else if self.is_constant() {
            self.terms.values().next().cloned()
        } else {
            None
        }
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rat)> + '_ {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rat)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> Option<&Rat> {
        self.leading_term().map(|(_, c)| c)
    }

    pub fn total_degree(&self) -> Degree {
        self.terms
            .keys()
            .next_back()
            .map_or(Degree::MinusInfinity, |m| Degree::Finite(m.degree()))
    }

    pub fn degree_in(&self, var: usize) -> Degree {
        self.terms
            .keys()
            .map(|m| m.0[var])
            .max()
            .map_or(Degree::MinusInfinity, Degree::Finite)
    }

    /// Variables that occur with positive exponent in some term.
    pub fn support_vars(&self) -> Vec<usize> {
        (0..self.nvars)
            .filter(|&i| self.terms.keys().any(|m| m.0[i] > 0))
            .collect()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn scale(&self, c: &Rat) -> MPoly {
        if c.is_zero() {
            return MPoly::zero(self.nvars);
        }
        MPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Rat) -> MPoly {
        if c.is_zero() {
            return MPoly::zero(self.nvars);
        }
        MPoly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(k, a)| (k.mul(m), a * c)).collect(),
        }
    }

    fn check_same_ring(&self, other: &MPoly) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::Arity {
                expected: self.nvars,
                found: other.nvars,
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &MPoly) -> Result<MPoly> {
        self.check_same_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &MPoly) -> Result<MPoly> {
        self.check_same_ring(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c.clone());
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &MPoly) -> Result<MPoly> {
        self.check_same_ring(other)?;
        let mut acc: std::collections::HashMap<Monomial, Rat> = std::collections::HashMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let c = ca * cb;
                *acc.entry(m).or_insert_with(Rat::zero) += c;
            }
        }
        Ok(MPoly {
            nvars: self.nvars,
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        })
    }

    pub fn pow(&self, mut e: u32) -> MPoly {
        let mut base = self.clone();
        let mut acc = MPoly::one(self.nvars);
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

    pub fn eval(&self, point: &[Rat]) -> Rat {
        assert_eq!(point.len(), self.nvars);
        let mut powers: Vec<Vec<Rat>> = point.iter().map(|v| vec![Rat::one(), v.clone()]).collect();
        let mut sum = Rat::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let pw = &mut powers[i];
                while pw.len() <= e as usize {
                    let next = pw.last().unwrap() * &point[i];
                    pw.push(next);
                }
                t *= &pw[e as usize];
            }
            sum += t;
        }
        sum
    }

    pub fn eval_f64(&self, point: &[f64]) -> f64 {
        assert_eq!(point.len(), self.nvars);
        self.terms
            .iter()
            .map(|(m, c)| {
                m.0.iter()
                    .zip(point)
                    .fold(rat_to_f64(c), |acc, (&e, &x)| acc * x.powi(e as i32))
            })
            .sum()
    }

    /// Replaces every variable `x_i` by `images[i]`; the result lives in the ring of the images.
    pub fn substitute(&self, images: &[MPoly]) -> Result<MPoly> {
        if images.len() != self.nvars {
            return Err(Error::Arity {
                expected: self.nvars,
                found: images.len(),
            });
        }
        let target = images.first().map_or(0, MPoly::nvars);
        for im in images {
            if im.nvars != target {
                return Err(Error::Arity {
                    expected: target,
                    found: im.nvars,
                });
            }
        }
        let mut powers: Vec<Vec<MPoly>> = images
            .iter()
            .map(|p| vec![MPoly::one(target), p.clone()])
            .collect();
        let mut out = MPoly::zero(target);
        for (m, c) in &self.terms {
            let mut t = MPoly::constant(target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let pw = &mut powers[i];
                while pw.len() <= e as usize {
                    let next = pw.last().unwrap() * &images[i];
                    pw.push(next);
                }
                t = &t * &pw[e as usize];
            }
            for (mm, cc) in t.terms {
                out.add_term(mm, cc);
            }
        }
        Ok(out)
    }

    /// Sets variable `var` to `value`; the variable stays in the ring with exponent 0.
    pub fn specialize(&self, var: usize, value: &Rat) -> MPoly {
        let mut out = MPoly::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[var];
            let mut mm = m.clone();
            mm.0[var] = 0;
            let mut cc = c.clone();
            if e > 0 {
                cc *= num_traits::pow(value.clone(), e as usize);
            }
            out.add_term(mm, cc);
        }
        out
    }

    /// Removes variable `var` from the ring. Panics if it occurs.
    pub fn drop_var(&self, var: usize) -> MPoly {
        let mut out = MPoly::zero(self.nvars - 1);
        for (m, c) in &self.terms {
            assert_eq!(m.0[var], 0, "dropping a variable that occurs");
            let mut e = m.0.clone();
            e.remove(var);
            out.terms.insert(Monomial(e), c.clone());
        }
        out
    }

    /// Inserts a new variable at position `var` (exponent 0 everywhere).
    pub fn insert_var(&self, var: usize) -> MPoly {
        let mut out = MPoly::zero(self.nvars + 1);
        for (m, c) in &self.terms {
            let mut e = m.0.clone();
            e.insert(var, 0);
            out.terms.insert(Monomial(e), c.clone());
        }
        out
    }

    pub fn derivative(&self, var: usize) -> MPoly {
        let mut out = MPoly::zero(self.nvars);
        for (m, c) in &self.terms {
            let e = m.0[var];
            if e == 0 {
                continue;
            }
            let mut mm = m.clone();
            mm.0[var] -= 1;
            out.add_term(mm, c * Rat::from_integer(BigInt::from(e)));
        }
        out
    }

    /// `x_0^d f(x_1/x_0, ..., x_n/x_0)` with `x_0` prepended as a new variable.
    pub fn homogenize(&self, d: u32) -> Result<MPoly> {
        if let Degree::Finite(deg) = self.total_degree() {
            if d < deg {
                return Err(Error::DegreeTooSmall { d, deg });
            }
        }
        let mut out = MPoly::zero(self.nvars + 1);
        for (m, c) in &self.terms {
            let mut e = Vec::with_capacity(self.nvars + 1);
            e.push(d - m.degree());
            e.extend_from_slice(&m.0);
            out.terms.insert(Monomial(e), c.clone());
        }
        Ok(out)
    }

    /// Sets `x_0 = 1` and drops it: the inverse of [`MPoly::homogenize`].
    pub fn dehomogenize(&self) -> MPoly {
        let mut out = MPoly::zero(self.nvars - 1);
        for (m, c) in &self.terms {
            out.add_term(Monomial(m.0[1..].to_vec()), c.clone());
        }
        out
    }

    /// Writes `F = x_0^e F'` with `x_0` not dividing `F'`.
    pub fn x0_valuation(&self) -> Result<(u32, MPoly)> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial("x0-valuation of zero"));
        }
        if !self.is_homogeneous() {
            return Err(Error::NotHomogeneous(self.to_string()));
        }
        let e = self.terms.keys().map(|m| m.0[0]).min().unwrap();
        let mut out = MPoly::zero(self.nvars);
        for (m, c) in &self.terms {
            let mut mm = m.clone();
            mm.0[0] -= e;
            out.terms.insert(mm, c.clone());
        }
        Ok((e, out))
    }

    /// Exact quotient `self / divisor`, or `None` when the division leaves a remainder.
    pub fn div_exact(&self, divisor: &MPoly) -> Option<MPoly> {
        assert_eq!(self.nvars, divisor.nvars);
        let (lm, lc) = divisor.leading_term()?;
        let (lm, lc) = (lm.clone(), lc.clone());
        let mut rem = self.clone();
        let mut quot = MPoly::zero(self.nvars);
        while let Some((m, c)) = rem.leading_term() {
            if !lm.divides(m) {
                return None;
            }
            let qm = m.div(&lm);
            let qc = c / &lc;
            let sub = divisor.mul_monomial(&qm, &qc);
            quot.add_term(qm, qc);
            rem = &rem - &sub;
        }
        Some(quot)
    }

    /// Scales to integer coefficients with content 1 and a positive leading coefficient.
    pub fn primitive(&self) -> MPoly {
        if self.is_zero() {
            return self.clone();
        }
        let l = denominators_lcm(self.terms.values());
        let scaled: Vec<Rat> = self
            .terms
            .values()
            .map(|c| c * Rat::from_integer(l.clone()))
            .collect();
        let g = numerators_gcd(scaled.iter());
        let mut factor = Rat::new(l, g);
        if self.leading_coeff().unwrap().is_negative() {
            factor = -factor;
        }
        self.scale(&factor)
    }

    /// Makes the leading coefficient 1.
    pub fn monic(&self) -> MPoly {
        match self.leading_coeff() {
            None => self.clone(),
            Some(lc) => self.scale(&lc.recip()),
        }
    }

    /// Coefficients with respect to `var`: `self = sum_k coeffs[k] * var^k`.
    pub fn coeffs_in(&self, var: usize) -> Vec<MPoly> {
        let deg = match self.degree_in(var) {
            Degree::MinusInfinity => return Vec::new(),
            Degree::Finite(d) => d as usize,
        };
        let mut out = vec![MPoly::zero(self.nvars); deg + 1];
        for (m, c) in &self.terms {
            let k = m.0[var] as usize;
            let mut mm = m.clone();
            mm.0[var] = 0;
            out[k].terms.insert(mm, c.clone());
        }
        out
    }

    pub fn from_coeffs_in(nvars: usize, var: usize, coeffs: &[MPoly]) -> MPoly {
        let mut out = MPoly::zero(nvars);
        for (k, p) in coeffs.iter().enumerate() {
            for (m, c) in &p.terms {
                let mut mm = m.clone();
                mm.0[var] += k as u32;
                out.add_term(mm, c.clone());
            }
        }
        out
    }

    /// Homogeneous component of the highest total degree.
    pub fn top_form(&self) -> MPoly {
        let d = match self.total_degree() {
            Degree::MinusInfinity => return self.clone(),
            Degree::Finite(d) => d,
        };
        MPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    /// Largest absolute coefficient as a float (for numeric scaling).
    pub fn max_abs_coeff(&self) -> f64 {
        self.terms
            .values()
            .map(|c| rat_to_f64(c).abs())
            .fold(0.0, f64::max)
    }
}

/// Generic names `x0, x1, ...`; use [`super::print::format_poly`] to choose names.
impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.nvars).map(|i| format!("x{i}")).collect();
        f.write_str(&super::print::format_poly(self, &names))
    }
}

impl Add for &MPoly {
    type Output = MPoly;
    fn add(self, rhs: &MPoly) -> MPoly {
        self.try_add(rhs).expect("polynomial rings differ")
    }
}

impl Sub for &MPoly {
    type Output = MPoly;
    fn sub(self, rhs: &MPoly) -> MPoly {
        self.try_sub(rhs).expect("polynomial rings differ")
    }
}

impl Mul for &MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &MPoly) -> MPoly {
        self.try_mul(rhs).expect("polynomial rings differ")
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        self.scale(&-Rat::one())
    }
}

impl Add for MPoly {
    type Output = MPoly;
    fn add(self, rhs: MPoly) -> MPoly {
        &self + &rhs
    }
}

impl Sub for MPoly {
    type Output = MPoly;
    fn sub(self, rhs: MPoly) -> MPoly {
        &self - &rhs
    }
}

impl Mul for MPoly {
    type Output = MPoly;
    fn mul(self, rhs: MPoly) -> MPoly {
        &self * &rhs
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::rational::{rat, ratio};

    fn x() -> MPoly {
        MPoly::var(2, 0)
    }
    fn y() -> MPoly {
        MPoly::var(2, 1)
    }
    fn c(v: i64) -> MPoly {
        MPoly::constant(2, rat(v))
    }

    #[test]
    fn cancellation_and_expansion() {
        let s = &(&x() + &y()) + &(&x() - &y());
        assert_eq!(s, x().scale(&rat(2)));
        let q = (&(&x() * &y()) - &c(1)).pow(2);
        let expect = &(&(&x().pow(2) * &y().pow(2)) - &(&x() * &y()).scale(&rat(2))) + &c(1);
        assert_eq!(q, expect);
        assert!((&q * &MPoly::zero(2)).is_zero());
    }

    #[test]
    fn degrees() {
        let f0 = &(&c(1) + &y().pow(4)).pow(2) * &(&c(1) + &x().pow(4)).pow(3);
        assert_eq!(f0.total_degree(), Degree::Finite(20));
        assert_eq!(y().pow(3).degree_in(0), Degree::Finite(0));
        assert_eq!(c(5).total_degree(), Degree::Finite(0));
        assert_eq!(MPoly::zero(2).total_degree(), Degree::MinusInfinity);
        assert!(Degree::MinusInfinity < Degree::Finite(0));
    }

    #[test]
    fn homogenize_examples() {
        let f = &y().pow(2) + &x().pow(2);
        let h = f.homogenize(2).unwrap();
        let x1 = MPoly::var(3, 1);
        let x2 = MPoly::var(3, 2);
        assert_eq!(h, &x1.pow(2) + &x2.pow(2));
        assert_eq!(c(1).homogenize(3).unwrap(), MPoly::var(3, 0).pow(3));
        assert_eq!(x().homogenize(2).unwrap(), &MPoly::var(3, 0) * &x1);
        assert!(matches!(
            f.homogenize(1),
            Err(Error::DegreeTooSmall { d: 1, deg: 2 })
        ));
        assert_eq!(h.dehomogenize(), f);
    }

    #[test]
    fn valuation_examples() {
        let x0 = MPoly::var(3, 0);
        let (e, rest) = x0.pow(3).x0_valuation().unwrap();
        assert_eq!((e, rest), (3, MPoly::one(3)));
        let g = &MPoly::var(3, 1).pow(2) + &(&x0 * &MPoly::var(3, 2));
        assert_eq!(g.x0_valuation().unwrap(), (0, g.clone()));
        assert!(MPoly::zero(3).x0_valuation().is_err());
    }

    #[test]
    fn exact_division() {
        let a = &(&x() + &c(1)) * &(&x() - &y());
        assert_eq!(a.div_exact(&(&x() + &c(1))).unwrap(), &x() - &y());
        assert!(a.div_exact(&(&x() + &c(2))).is_none());
    }

    #[test]
    fn primitive_normalization() {
        let p = (&x().scale(&ratio(-2, 3)) + &c(4)).primitive();
        assert_eq!(p, &x() - &c(6));
    }

    #[test]
    fn arity_errors() {
        assert!(x().try_add(&MPoly::var(3, 0)).is_err());
    }
}
