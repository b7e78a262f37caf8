//! Helpers around arbitrary-precision rationals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Exact rational number. Always stored reduced with a positive denominator.
pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"3"`, `"-7/2"`. Used by the JSON surfaces, which carry rationals as strings.
pub fn parse_rat(s: &str) -> Option<Rat> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                None
            } else {
                Some(Rat::new(n, d))
            }
        }
        None => s.parse::<BigInt>().ok().map(Rat::from_integer),
    }
}

pub fn rat_to_string(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Float approximation that does not overflow on huge numerators/denominators.
pub fn rat_to_f64(r: &Rat) -> f64 {
    if let Some(v) = r.to_f64() {
        if v.is_finite() && (v != 0.0 || r.is_zero()) {
            return v;
        }
    }
    let n = r.numer();
    let d = r.denom();
    let shift = n.bits() as i64 - d.bits() as i64;
    // scale both to ~60 significant bits
    let (n2, d2) = if shift > 0 {
        (n.clone(), d.clone() << (shift as usize))
    } else {
        (n.clone() << ((-shift) as usize), d.clone())
    };
    let q = Rat::new(n2, d2).to_f64().unwrap_or(0.0);
    q * 2f64.powi(shift.clamp(-2000, 2000) as i32)
}

/// Exact dyadic rational for a finite float.
pub fn rat_from_f64(x: f64) -> Rat {
    Rat::from_float(x).unwrap_or_else(Rat::zero)
}

/// Least common multiple of the denominators of `coeffs`.
pub fn denominators_lcm<'a>(coeffs: impl IntoIterator<Item = &'a Rat>) -> BigInt {
    coeffs
        .into_iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
}

/// Gcd of the numerators of `coeffs` (non-negative).
pub fn numerators_gcd<'a>(coeffs: impl IntoIterator<Item = &'a Rat>) -> BigInt {
    coeffs
        .into_iter()
        .fold(BigInt::zero(), |acc, c| acc.gcd(c.numer()))
}

/// The simplest rational (smallest denominator) in the closed interval `[lo, hi]`.
pub fn simplest_between(lo: &Rat, hi: &Rat) -> Rat {
    debug_assert!(lo <= hi);
    if lo.is_positive() {
        simplest_positive(lo, hi)
    } else if hi.is_negative() {
        -simplest_positive(&-hi, &-lo)
    } else {
        Rat::zero()
    }
}

fn simplest_positive(lo: &Rat, hi: &Rat) -> Rat {
    // Stern-Brocot descent via continued fractions.
    let fl = lo.floor();
    if &fl == lo {
        return fl;
    }
    if fl.clone() + Rat::one() <= *hi {
        return fl + Rat::one();
    }
    let lo_frac = lo - &fl;
    let hi_frac = hi - &fl;
    let inner = simplest_positive(&hi_frac.recip(), &lo_frac.recip());
    fl + inner.recip()
}

pub fn abs(r: &Rat) -> Rat {
    r.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_print() {
        assert_eq!(parse_rat("-6/4").unwrap(), ratio(-3, 2));
        assert_eq!(rat_to_string(&ratio(-3, 2)), "-3/2");
        assert_eq!(rat_to_string(&rat(5)), "5");
        assert!(parse_rat("1/0").is_none());
        assert!(parse_rat("0.5").is_none());
    }

    #[test]
    fn simplest_rational() {
        assert_eq!(simplest_between(&ratio(1, 3), &ratio(1, 2)), ratio(1, 2));
        assert_eq!(simplest_between(&ratio(31, 100), &ratio(34, 100)), ratio(1, 3));
        assert_eq!(simplest_between(&ratio(-34, 100), &ratio(-31, 100)), ratio(-1, 3));
        assert_eq!(simplest_between(&ratio(-1, 100), &ratio(1, 100)), rat(0));
        assert_eq!(simplest_between(&ratio(7, 2), &ratio(7, 2)), ratio(7, 2));
    }

    #[test]
    fn huge_to_float() {
        let big = Rat::new(BigInt::from(3) << 2000usize, BigInt::from(1) << 1999usize);
        assert!((rat_to_f64(&big) - 6.0).abs() < 1e-12);
    }
}
