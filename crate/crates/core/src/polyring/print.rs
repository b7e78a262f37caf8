//! Canonical text form: terms in decreasing graded-lex order, explicit `*` and `^`.

use num_traits::{One, Signed};

use super::laurent::LaurentPoly;
use super::mpoly::MPoly;
use super::rational::rat_to_string;

/// Variable names for an affine space of dimension `n`: `x, y, z` up to three, else `x1..xn`.
pub fn affine_names(n: usize) -> Vec<String> {
    if n <= 3 {
        ["x", "y", "z"][..n].iter().map(|s| s.to_string()).collect()
    } else {
        (1..=n).map(|i| format!("x{i}")).collect()
    }
}

/// Names `x0..xn` for homogeneous coordinates.
pub fn projective_names(n: usize) -> Vec<String> {
    (0..=n).map(|i| format!("x{i}")).collect()
}

fn push_term(out: &mut String, first: bool, coeff: &num_rational::BigRational, factors: &str) {
    let neg = coeff.is_negative();
    let abs = coeff.abs();
    if first {
        if neg {
            out.push('-');
        }
    } else {
        out.push_str(if neg { " - " } else { " + " });
    }
    if factors.is_empty() {
        out.push_str(&rat_to_string(&abs));
    } else if abs.is_one() {
        out.push_str(factors);
    } else {
        out.push_str(&rat_to_string(&abs));
        out.push('*');
        out.push_str(factors);
    }
}

pub fn format_poly(p: &MPoly, names: &[String]) -> String {
    assert_eq!(names.len(), p.nvars(), "one name per variable");
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (m, c)) in p.terms().rev().enumerate() {
        let factors: Vec<String> = m
            .0
            .iter()
            .zip(names)
            .filter(|(e, _)| **e > 0)
            .map(|(e, name)| {
                if *e == 1 {
                    name.clone()
                } else {
                    format!("{name}^{e}")
                }
            })
            .collect();
        push_term(&mut out, i == 0, c, &factors.join("*"));
    }
    out
}

/// Laurent polynomial in `t`, highest exponent first.
pub fn format_laurent(p: &LaurentPoly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (k, c)) in p.terms().rev().enumerate() {
        let factor = match k {
            0 => String::new(),
            1 => "t".to_string(),
            k => format!("t^{k}"),
        };
        push_term(&mut out, i == 0, c, &factor);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::rational::{rat, ratio};

    #[test]
    fn canonical_strings() {
        let names = affine_names(2);
        let x = MPoly::var(2, 0);
        let y = MPoly::var(2, 1);
        let p = &(&(&x * &y) - &MPoly::one(2)).pow(2) + &x.scale(&ratio(-3, 2));
        assert_eq!(format_poly(&p, &names), "x^2*y^2 - 2*x*y - 3/2*x + 1");
        assert_eq!(format_poly(&MPoly::zero(2), &names), "0");
        assert_eq!(format_poly(&y.scale(&rat(-1)), &names), "-y");
        let l = LaurentPoly::from_terms([(-3, rat(1)), (-2, rat(2)), (1, rat(-1))]);
        assert_eq!(format_laurent(&l), "-t + 2*t^-2 + t^-3");
        assert_eq!(affine_names(4)[3], "x4");
    }
}
