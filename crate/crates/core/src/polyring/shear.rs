//! Linear changes of coordinates in the range and in the domain of a map.

use num_traits::Zero;

use super::mpoly::{Degree, MPoly};
use super::rational::{rat, Rat};
use crate::error::{Error, Result};
use crate::parser::RegularMap;

/// Range shear `y_j -> y_j + b_j * y_pivot` for `j != pivot` (`b[pivot]` is ignored).
pub fn shear_range(f: &RegularMap, pivot: usize, b: &[Rat]) -> Result<RegularMap> {
    if b.len() != f.m() || pivot >= f.m() {
        return Err(Error::Arity {
            expected: f.m(),
            found: b.len(),
        });
    }
    let p = &f.fs()[pivot];
    let fs = f
        .fs()
        .iter()
        .enumerate()
        .map(|(j, fj)| {
            if j == pivot || b[j].is_zero() {
                fj.clone()
            } else {
                fj + &p.scale(&b[j])
            }
        })
        .collect();
    RegularMap::new(f.f0().clone(), fs)?.reduce()
}

/// Domain shear `x_i -> x_i + a_i * x_1` for `i >= 2` (`a[0]` is ignored).
pub fn shear_domain(f: &RegularMap, a: &[Rat]) -> Result<RegularMap> {
    let n = f.n();
    if a.len() != n {
        return Err(Error::Arity {
            expected: n,
            found: a.len(),
        });
    }
    let images = domain_images(n, a);
    let sub = |p: &MPoly| p.substitute(&images);
    let fs = f.fs().iter().map(sub).collect::<Result<Vec<_>>>()?;
    RegularMap::new(sub(f.f0())?, fs)?.reduce()
}

/// The substitution `x_1 -> x_1`, `x_i -> x_i + a_i x_1`.
pub fn domain_images(n: usize, a: &[Rat]) -> Vec<MPoly> {
    (0..n)
        .map(|i| {
            let xi = MPoly::var(n, i);
            if i == 0 || a[i].is_zero() {
                xi
            } else {
                &xi + &MPoly::var(n, 0).scale(&a[i])
            }
        })
        .collect()
}

/// Coefficients chosen by [`find_normalizing_shear`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalizingShear {
    /// Pivot component (0-based) for the range shear.
    pub pivot: usize,
    pub range: Vec<Rat>,
    pub domain: Vec<Rat>,
}

impl NormalizingShear {
    pub fn is_identity(&self) -> bool {
        self.range.iter().chain(&self.domain).all(Zero::is_zero)
    }
}

/// Largest coefficient tried for each shear entry.
const MAX_SHEAR: i64 = 12;

/// Finds shears making `deg f_1 = ... = deg f_m` and `deg f_j = deg_{x_1} f_j` for every
/// component (including `f0`). Candidates are tried in a fixed order starting with the
/// identity, so results are reproducible.
pub fn find_normalizing_shear(f: &RegularMap) -> Result<(NormalizingShear, RegularMap)> {
    let m = f.m();
    let d = f
        .fs()
        .iter()
        .filter_map(|p| p.total_degree().finite())
        .max()
        .ok_or(Error::ZeroPolynomial("all numerators are zero"))?;
    let pivot = f
        .fs()
        .iter()
        .position(|p| p.total_degree() == Degree::Finite(d))
        .unwrap();
    let mut range = vec![Rat::zero(); m];
    for (j, b) in range.iter_mut().enumerate() {
        if j == pivot || f.fs()[j].total_degree() == Degree::Finite(d) {
            continue;
        }
        // f_j + b f_pivot has degree d for every b != 0, since deg f_j < d
        *b = rat(1);
    }
    let g = shear_range(f, pivot, &range)?;

    let n = g.n();
    let tops: Vec<MPoly> = g.components().iter().map(MPoly::top_form).collect();
    for a in shear_candidates(n) {
        let mut pt = a.clone();
        pt[0] = rat(1);
        if tops.iter().all(|t| !t.eval(&pt).is_zero()) {
            let h = shear_domain(&g, &a)?;
            return Ok((
                NormalizingShear {
                    pivot,
                    range,
                    domain: a,
                },
                h,
            ));
        }
    }
    Err(Error::precondition(
        "normalizing shear",
        format!("no domain shear with coefficients up to {MAX_SHEAR} works"),
    ))
}

/// `(0, a_2, ..., a_n)` in order of increasing max-norm, lexicographic within a shell.
fn shear_candidates(n: usize) -> impl Iterator<Item = Vec<Rat>> {
    (0..=MAX_SHEAR).flat_map(move |r| {
        let k = n - 1;
        let total = (r as usize + 1).pow(k as u32);
        (0..total).filter_map(move |mut code| {
            let mut v = vec![Rat::zero(); n];
            let mut hit = k == 0 && r == 0;
            for slot in v.iter_mut().skip(1) {
                let c = (code % (r as usize + 1)) as i64;
                code /= r as usize + 1;
                hit |= c == r;
                *slot = rat(c);
            }
            hit.then_some(v)
        })
    })
}
