//! Multivariate gcd by content/primitive-part recursion with a primitive
//! pseudo-remainder sequence in the main variable.
//!
//! Fine for the desk-scale inputs here (a few variables, degrees up to ~40).
//! Coefficient growth is controlled only by taking primitive parts, so the worst
//! case is exponential in the number of variables.

use num_traits::{One, Zero};

use super::mpoly::{Degree, MPoly};
use super::rational::{rat, Rat};
use super::univariate::UPoly;
use crate::error::{Error, Result};

/// Greatest common divisor, normalized by [`MPoly::primitive`]. `gcd(0, 0) = 0`.
pub fn gcd(a: &MPoly, b: &MPoly) -> MPoly {
    if a.is_zero() {
        return b.primitive();
    }
    if b.is_zero() {
        return a.primitive();
    }
    if a.is_constant() || b.is_constant() {
        return MPoly::one(a.nvars());
    }
    if quick_coprime(a, b) {
        return MPoly::one(a.nvars());
    }
    gcd_rec(a, b).primitive()
}

fn main_var(a: &MPoly, b: &MPoly) -> Option<usize> {
    let mut vars = a.support_vars();
    vars.extend(b.support_vars());
    vars.into_iter().max()
}

fn gcd_rec(a: &MPoly, b: &MPoly) -> MPoly {
    let n = a.nvars();
    if a.is_zero() {
        return b.clone();
    }
    if b.is_zero() {
        return a.clone();
    }
    let Some(v) = main_var(a, b) else {
        return MPoly::one(n);
    };
    let ca = content(a, v);
    let cb = content(b, v);
    let c = gcd_rec(&ca, &cb).primitive();
    let mut pa = a.div_exact(&ca).expect("content divides");
    let mut pb = b.div_exact(&cb).expect("content divides");
    if pa.degree_in(v) < pb.degree_in(v) {
        std::mem::swap(&mut pa, &mut pb);
    }
    if pb.degree_in(v) == Degree::Finite(0) {
        return c;
    }
    loop {
        let r = prem(&pa, &pb, v);
        if r.is_zero() {
            break;
        }
        if r.degree_in(v) == Degree::Finite(0) {
            return c;
        }
        let cr = content(&r, v);
        pa = pb;
        pb = r.div_exact(&cr).expect("content divides").primitive();
    }
    &c * &pb.primitive()
}

/// Gcd of the coefficients of `p` viewed as a polynomial in `v`.
fn content(p: &MPoly, v: usize) -> MPoly {
    let coeffs = p.coeffs_in(v);
    let mut nz = coeffs.into_iter().filter(|c| !c.is_zero());
    let Some(first) = nz.next() else {
        return MPoly::zero(p.nvars());
    };
    let mut g = first;
    for c in nz {
        if g.is_constant() {
            break;
        }
        g = gcd_rec(&g, &c);
    }
    if g.is_constant() {
        MPoly::one(p.nvars())
    } else {
        g.primitive()
    }
}

/// Pseudo-remainder of `a` by `b` in variable `v`.
fn prem(a: &MPoly, b: &MPoly, v: usize) -> MPoly {
    let db = b.degree_in(v).unwrap();
    let bc = b.coeffs_in(v);
    let lb = bc.last().unwrap().clone();
    let tail = MPoly::from_coeffs_in(b.nvars(), v, &bc[..bc.len() - 1]);
    let mut r = a.clone();
    while let Degree::Finite(dr) = r.degree_in(v) {
        if dr < db {
            break;
        }
        let rc = r.coeffs_in(v);
        let lr = rc.last().unwrap().clone();
        let rest = MPoly::from_coeffs_in(r.nvars(), v, &rc[..rc.len() - 1]);
        let mut shift = vec![0; r.nvars()];
        shift[v] = dr - db;
        let shift = MPoly::from_terms(r.nvars(), [(shift, Rat::one())]);
        r = &(&lb * &rest) - &(&(&lr * &shift) * &tail);
    }
    r
}

/// Cheap sufficient test for `gcd(a, b) = 1`: for each variable, specialize the others at a
/// point where both leading coefficients survive and check the univariate gcd.
pub fn quick_coprime(a: &MPoly, b: &MPoly) -> bool {
    let n = a.nvars();
    let mut vars = a.support_vars();
    vars.retain(|v| b.degree_in(*v).finite().unwrap_or(0) > 0);
    // A common factor must involve some variable that occurs in both.
    if vars.is_empty() {
        return true;
    }
    'var: for &v in &vars {
        let la = a.coeffs_in(v).pop().unwrap();
        let lb = b.coeffs_in(v).pop().unwrap();
        for attempt in 0..8i64 {
            let point: Vec<Rat> = (0..n)
                .map(|i| rat(((i as i64 + 1) * 7 + attempt * 13) % 23 - 11))
                .collect();
            let mut pt = point.clone();
            pt[v] = Rat::zero();
            if la.eval(&pt).is_zero() || lb.eval(&pt).is_zero() {
                continue;
            }
            let ua = specialize_except(a, v, &point);
            let ub = specialize_except(b, v, &point);
            if ua.gcd(&ub).degree() == Some(0) {
                continue 'var;
            }
            return false;
        }
        return false;
    }
    true
}

fn specialize_except(p: &MPoly, keep: usize, point: &[Rat]) -> UPoly {
    let mut q = p.clone();
    for (i, x) in point.iter().enumerate() {
        if i != keep {
            q = q.specialize(i, x);
        }
    }
    UPoly::from_mpoly(&q, keep).expect("only one variable left")
}

/// Gcd of a list.
pub fn gcd_all<'a>(polys: impl IntoIterator<Item = &'a MPoly>, nvars: usize) -> MPoly {
    let mut g = MPoly::zero(nvars);
    for p in polys {
        if g.is_constant() && !g.is_zero() {
            break;
        }
        g = gcd(&g, p);
    }
    g
}

/// Divides `f0, fs` by their common gcd. Returns the gcd and the reduced list.
pub fn gcd_reduce(f0: &MPoly, fs: &[MPoly]) -> Result<(MPoly, MPoly, Vec<MPoly>)> {
    let n = f0.nvars();
    let g = gcd_all(std::iter::once(f0).chain(fs), n);
    if g.is_zero() {
        return Err(Error::ZeroPolynomial("gcd_reduce of an all-zero list"));
    }
    let div = |p: &MPoly| p.div_exact(&g).expect("gcd divides every input");
    Ok((g.clone(), div(f0), fs.iter().map(div).collect()))
}

/// Squarefree part `p / gcd(p, dp/dx_1, ..., dp/dx_n)`, primitive.
pub fn squarefree(p: &MPoly) -> MPoly {
    if p.is_constant() {
        return if p.is_zero() {
            p.clone()
        } else {
            MPoly::one(p.nvars())
        };
    }
    let mut g = p.clone();
    for v in p.support_vars() {
        if g.is_constant() {
            break;
        }
        g = gcd(&g, &p.derivative(v));
    }
    if g.is_constant() {
        p.primitive()
    } else {
        p.div_exact(&g).expect("gcd divides").primitive()
    }
}

/// True when `p` is a nonzero constant multiple of `q`.
pub fn associates(p: &MPoly, q: &MPoly) -> bool {
    p.primitive() == q.primitive()
}

#[cfg(test)]
mod tests {
    use super::*;

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
    fn monomial_gcd() {
        let (g, _, red) = gcd_reduce(&(&x().pow(2) * &y()), &[&x() * &y().pow(2)]).unwrap();
        assert_eq!(g, &x() * &y());
        assert_eq!(red, vec![y()]);
        let (g, f0, red) = gcd_reduce(&(&x().pow(2) * &y()), &[&x() * &y().pow(2)]).unwrap();
        assert_eq!(&g * &f0, &x().pow(2) * &y());
        assert_eq!(red.len(), 1);
    }

    #[test]
    fn coprime_inputs() {
        let (g, f0, red) = gcd_reduce(&x(), &[&y() + &c(1)]).unwrap();
        assert_eq!(g, c(1));
        assert_eq!(f0, x());
        assert_eq!(red, vec![&y() + &c(1)]);
    }

    #[test]
    fn univariate_case() {
        let a = &x().pow(2) - &c(1);
        let b = &(&x().pow(2) + &x().scale(&rat(2))) + &c(1);
        assert_eq!(gcd(&a, &b), &x() + &c(1));
    }

    #[test]
    fn bivariate_common_factor() {
        let h = &(&x() * &y()) - &c(1);
        let a = &h * &(&x() + &y());
        let b = &h.pow(2) * &(&x() - &y().pow(3));
        assert_eq!(gcd(&a, &b), h.primitive());
        assert!(!quick_coprime(&a, &b));
        assert!(quick_coprime(&(&x() + &y()), &(&x() - &y())));
    }

    #[test]
    fn squarefree_part() {
        let p = &(&x().pow(2) + &y().pow(2)).pow(3) * &(&x() - &c(1)).pow(2);
        let s = squarefree(&p);
        assert!(associates(&s, &(&(&x().pow(2) + &y().pow(2)) * &(&x() - &c(1)))));
    }

    #[test]
    fn all_zero_rejected() {
        assert!(gcd_reduce(&MPoly::zero(2), &[MPoly::zero(2)]).is_err());
    }
}
