//! Closed intervals with rational endpoints.

use num_traits::{One, Signed, Zero};

use crate::polyring::{MPoly, Rat, UPoly};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Iv {
    pub lo: Rat,
    pub hi: Rat,
}

impl Iv {
    pub fn point(x: Rat) -> Iv {
        Iv {
            lo: x.clone(),
            hi: x,
        }
    }

    pub fn new(lo: Rat, hi: Rat) -> Iv {
        debug_assert!(lo <= hi);
        Iv { lo, hi }
    }

    pub fn contains_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    pub fn add(&self, o: &Iv) -> Iv {
        Iv::new(&self.lo + &o.lo, &self.hi + &o.hi)
    }

    pub fn neg(&self) -> Iv {
        Iv::new(-self.hi.clone(), -self.lo.clone())
    }

    pub fn scale(&self, c: &Rat) -> Iv {
        let (a, b) = (&self.lo * c, &self.hi * c);
        if a <= b {
            Iv::new(a, b)
        } else {
            Iv::new(b, a)
        }
    }

    pub fn mul(&self, o: &Iv) -> Iv {
        let ps = [
            &self.lo * &o.lo,
            &self.lo * &o.hi,
            &self.hi * &o.lo,
            &self.hi * &o.hi,
        ];
        let lo = ps.iter().min().unwrap().clone();
        let hi = ps.iter().max().unwrap().clone();
        Iv::new(lo, hi)
    }

    /// `None` if the divisor contains zero.
    pub fn div(&self, o: &Iv) -> Option<Iv> {
        if o.contains_zero() {
            return None;
        }
        let inv = Iv::new(o.hi.recip(), o.lo.recip());
        Some(self.mul(&inv))
    }

    /// Enclosure of `p` over the interval (Horner form).
    pub fn eval(p: &UPoly, x: &Iv) -> Iv {
        let mut acc = Iv::point(Rat::zero());
        for c in p.coeffs().iter().rev() {
            acc = acc.mul(x).add(&Iv::point(c.clone()));
        }
        acc
    }

    pub fn width(&self) -> Rat {
        &self.hi - &self.lo
    }

    pub fn pow(&self, e: u32) -> Iv {
        let mut acc = Iv::point(Rat::one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Enclosure of a multivariate polynomial over a box.
    pub fn eval_mpoly(p: &MPoly, bx: &[Iv]) -> Iv {
        let mut acc = Iv::point(Rat::zero());
        for (m, c) in p.terms() {
            let mut t = Iv::point(c.clone());
            for (x, &e) in bx.iter().zip(&m.0) {
                if e > 0 {
                    t = t.mul(&x.pow(e));
                }
            }
            acc = acc.add(&t);
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::rat;

    #[test]
    fn enclosure() {
        let p = UPoly::new(vec![rat(-2), rat(0), rat(1)]);
        let x = Iv::new(rat(1), rat(2));
        let v = Iv::eval(&p, &x);
        assert!(v.lo <= rat(-1) && v.hi >= rat(2));
        assert!(Iv::point(rat(1)).div(&Iv::new(rat(-1), rat(1))).is_none());
    }
}
