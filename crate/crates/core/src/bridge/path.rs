use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::parser::RationalPath;
use crate::polyring::{LaurentPoly, Rat, UPoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Target {
    Simple,
    Qp,
}

/// A path written as `alpha_i = t^{k_i} p_i(t)` with `p_i(0) != 0`.
#[derive(Clone, Debug, PartialEq)]
pub struct NormalizedPath {
    pub base: RationalPath,
    /// 0-based index of the first component of minimal order.
    pub i0: usize,
    /// `None` marks a zero component.
    pub k: Vec<Option<i64>>,
    pub p: Vec<UPoly>,
    /// `t -> t^s` applied to the input.
    pub reparam: u32,
}

impl NormalizedPath {
    /// Splits a path that already goes to infinity; no reparametrization.
    pub fn split(base: RationalPath) -> Result<NormalizedPath> {
        match base.min_order() {
            Some(k) if k < 0 => {}
            _ => return Err(Error::PathNotAtInfinity),
        }
        let k = base.orders();
        let p = base
            .components()
            .iter()
            .zip(&k)
            .map(|(c, ki)| match ki {
                None => UPoly::zero(),
                Some(ki) => unit_part(c, *ki),
            })
            .collect();
        Ok(NormalizedPath {
            i0: base.i0(),
            k,
            p,
            base,
            reparam: 1,
        })
    }

    pub fn len(&self) -> usize {
        self.k.len()
    }

    pub fn is_empty(&self) -> bool {
        self.k.is_empty()
    }

    pub fn k_i0(&self) -> i64 {
        self.k[self.i0].expect("marked component is nonzero")
    }

    pub fn components(&self) -> &[LaurentPoly] {
        self.base.components()
    }
}

fn unit_part(c: &LaurentPoly, k: i64) -> UPoly {
    let top = c.max_exponent().unwrap();
    UPoly::new((k..=top).map(|e| c.coeff(e)).collect())
}

/// Smallest `s` in `1..=6` with `s k <= -6` and `s k` even.
pub fn qp_exponent(k: i64) -> Option<u32> {
    (1..=6u32).find(|&s| {
        let ks = k * s as i64;
        ks <= -6 && ks % 2 == 0
    })
}

pub fn normalize_path(alpha: &RationalPath, target: Target) -> Result<NormalizedPath> {
    let k = match alpha.min_order() {
        Some(k) if k < 0 => k,
        _ => return Err(Error::PathNotAtInfinity),
    };
    match target {
        Target::Simple => NormalizedPath::split(alpha.clone()),
        Target::Qp => {
            let s = qp_exponent(k).expect("some s <= 6 always works");
            let mut np = NormalizedPath::split(alpha.reparametrize(s))?;
            np.reparam = s;
            let p = &np.p[np.i0];
            if !(p.degree() == Some(0) && p.lc().abs().is_one()) {
                return Err(Error::precondition(
                    "p_i0 = +-1",
                    format!(
                        "component {} is not a monomial +-t^k; supply the path in normalized form",
                        np.i0 + 1
                    ),
                ));
            }
            Ok(np)
        }
    }
}

/// Whether `np` satisfies the order conditions of the qp construction.
pub fn qp_orders_ok(np: &NormalizedPath) -> bool {
    let k = np.k_i0();
    k <= -6 && k % 2 == 0
}

/// `p_i(0)`, zero for a zero component.
pub fn p_at_zero(np: &NormalizedPath, i: usize) -> Rat {
    np.p[i].coeffs().first().cloned().unwrap_or_else(Rat::zero)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_path;
    use crate::polyring::rat;

    #[test]
    fn simple() {
        let np = normalize_path(&parse_path("(1/t, 1)").unwrap(), Target::Simple).unwrap();
        assert_eq!(np.i0, 0);
        assert_eq!(np.k, vec![Some(-1), Some(0)]);
        assert_eq!(np.p, vec![UPoly::constant(rat(1)), UPoly::constant(rat(1))]);
        assert!(matches!(
            normalize_path(&parse_path("(t, 1)").unwrap(), Target::Simple),
            Err(Error::PathNotAtInfinity)
        ));
    }

    #[test]
    fn qp() {
        let np = normalize_path(&parse_path("(1/t, 1)").unwrap(), Target::Qp).unwrap();
        assert_eq!(np.reparam, 6);
        assert_eq!(np.k, vec![Some(-6), Some(0)]);
        let err = normalize_path(&parse_path("((1+t)/t, 1)").unwrap(), Target::Qp);
        assert!(matches!(err, Err(Error::Precondition { .. })));
        for k in -20..0 {
            let s = qp_exponent(k).unwrap() as i64;
            assert!(s * k <= -6 && (s * k) % 2 == 0);
        }
    }
}
