//! Univariate Laurent polynomials in `t`.

use std::collections::BTreeMap;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::mpoly::MPoly;
use super::rational::{rat_to_f64, Rat};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, Rat>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn constant(c: Rat) -> Self {
        LaurentPoly::monomial(0, c)
    }

    pub fn one() -> Self {
        LaurentPoly::constant(Rat::one())
    }

    /// `c * t^k`.
    pub fn monomial(k: i64, c: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(k, c);
        }
        LaurentPoly { terms }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i64, Rat)>) -> Self {
        let mut p = LaurentPoly::zero();
        for (k, c) in terms {
            p.add_term(k, c);
        }
        p
    }

    fn add_term(&mut self, k: i64, c: Rat) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(k).or_insert_with(Rat::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&k);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Minimal exponent; `None` for the zero polynomial.
    pub fn ord(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_exponent(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }

    pub fn coeff(&self, k: i64) -> Rat {
        self.terms.get(&k).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn lowest_coeff(&self) -> Option<&Rat> {
        self.terms.values().next()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&i64, &Rat)> + '_ {
        self.terms.iter()
    }

    pub fn scale(&self, c: &Rat) -> LaurentPoly {
        LaurentPoly::from_terms(self.terms.iter().map(|(k, a)| (*k, a * c)))
    }

    /// Multiplies by `t^k`.
    pub fn shift(&self, k: i64) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> LaurentPoly {
        let mut base = self.clone();
        let mut acc = LaurentPoly::one();
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

    /// Substitutes `t -> t^s` for a positive integer `s`.
    pub fn reparametrize(&self, s: u32) -> LaurentPoly {
        assert!(s > 0);
        LaurentPoly {
            terms: self
                .terms
                .iter()
                .map(|(k, c)| (k * s as i64, c.clone()))
                .collect(),
        }
    }

    /// `t^{-ord} * self` as coefficient list of an ordinary polynomial (index = power of t).
    pub fn unit_part(&self) -> Vec<Rat> {
        let Some(o) = self.ord() else {
            return Vec::new();
        };
        let top = self.max_exponent().unwrap();
        let mut out = vec![Rat::zero(); (top - o) as usize + 1];
        for (k, c) in &self.terms {
            out[(k - o) as usize] = c.clone();
        }
        out
    }

    pub fn eval(&self, t: &Rat) -> Rat {
        assert!(!t.is_zero() || self.ord().is_none_or(|o| o >= 0));
        self.terms
            .iter()
            .map(|(k, c)| {
                if *k >= 0 {
                    c * num_traits::pow(t.clone(), *k as usize)
                } else {
                    c * num_traits::pow(t.recip(), (-k) as usize)
                }
            })
            .fold(Rat::zero(), |a, b| a + b)
    }

    /// Float value of `t^{-nu} * self(t)`; lets callers compare magnitudes without overflow.
    pub fn eval_scaled_f64(&self, t: f64, nu: i64) -> f64 {
        let lt = t.ln();
        self.terms
            .iter()
            .map(|(k, c)| {
                let c = rat_to_f64(c);
                c * ((k - nu) as f64 * lt).exp()
            })
            .sum()
    }

    pub fn eval_f64(&self, t: f64) -> f64 {
        self.eval_scaled_f64(t, 0)
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(*k, c.clone());
        }
        out
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (k, c) in &rhs.terms {
            out.add_term(*k, -c.clone());
        }
        out
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (a, ca) in &self.terms {
            for (b, cb) in &rhs.terms {
                out.add_term(a + b, ca * cb);
            }
        }
        out
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        self.scale(&-Rat::one())
    }
}

/// Evaluates `f` along the path `(alpha_1(t), ..., alpha_n(t))`.
pub fn compose_path(f: &MPoly, alpha: &[LaurentPoly]) -> Result<LaurentPoly> {
    if f.nvars() != alpha.len() {
        return Err(Error::Arity {
            expected: f.nvars(),
            found: alpha.len(),
        });
    }
    let mut powers: Vec<Vec<LaurentPoly>> = alpha
        .iter()
        .map(|a| vec![LaurentPoly::one(), a.clone()])
        .collect();
    let mut out = LaurentPoly::zero();
    for (m, c) in f.terms() {
        let mut term = LaurentPoly::constant(c.clone());
        for (i, &e) in m.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let pw = &mut powers[i];
            while pw.len() <= e as usize {
                let next = pw.last().unwrap() * &alpha[i];
                pw.push(next);
            }
            term = &term * &pw[e as usize];
            if term.is_zero() {
                break;
            }
        }
        for (k, v) in term.terms {
            out.add_term(k, v);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::rational::rat;

    fn t(k: i64) -> LaurentPoly {
        LaurentPoly::monomial(k, rat(1))
    }

    #[test]
    fn compose_examples() {
        let x = MPoly::var(2, 0);
        let y = MPoly::var(2, 1);
        assert_eq!(
            compose_path(&(&x * &y), &[t(-1), t(1)]).unwrap(),
            LaurentPoly::one()
        );
        let f = &y.pow(2) + &x.pow(2);
        assert_eq!(
            compose_path(&f, &[t(-1), LaurentPoly::zero()]).unwrap(),
            t(-2)
        );
        let one = MPoly::one(2);
        let g = &(&(&x * &y) - &one).pow(2) + &x.pow(2);
        assert_eq!(compose_path(&g, &[t(1), t(-1)]).unwrap(), t(2));
        assert!(compose_path(&g, &[t(1)]).is_err());
    }

    #[test]
    fn ord_and_unit_part() {
        let p = LaurentPoly::from_terms([(-3, rat(1)), (-2, rat(2))]);
        assert_eq!(p.ord(), Some(-3));
        assert_eq!(p.unit_part(), vec![rat(1), rat(2)]);
        assert_eq!(p.reparametrize(2).ord(), Some(-6));
        assert_eq!(LaurentPoly::zero().ord(), None);
    }

    #[test]
    fn scaled_float_eval() {
        let p = LaurentPoly::from_terms([(-300, rat(2)), (0, rat(1))]);
        let v = p.eval_scaled_f64(1e-3, -300);
        assert!((v - 2.0).abs() < 1e-12);
    }
}
