//! Real common zeros of homogeneous polynomials in projective space.

use num_traits::{One, Zero};
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use super::bivariate::{solve_bivariate, solve_univariate, to_iv, Affine};
use super::interval::Iv;
use super::numeric::{rationalize, search, NumericConfig};
use super::Mode;
use crate::error::{Error, Result};
use crate::polyring::rational::rat_to_string;
use crate::polyring::univariate::RealRoot;
use crate::polyring::{MPoly, Rat};
use crate::projective::ProjPoint;

/// A real point of the zero set.
#[derive(Clone, Debug, PartialEq)]
pub enum Witness {
    Exact(ProjPoint),
    /// Box in homogeneous coordinates containing a common zero.
    Interval { lo: Vec<Rat>, hi: Vec<Rat> },
    /// Unit vector where the scaled residual is below tolerance; not a proof.
    Float(Vec<f64>),
}

impl Witness {
    pub fn is_certified(&self) -> bool {
        !matches!(self, Witness::Float(_))
    }

    pub fn exact(&self) -> Option<&ProjPoint> {
        match self {
            Witness::Exact(p) => Some(p),
            _ => None,
        }
    }

    /// Checks the witness against `polys`: exact vanishing, or an interval enclosure
    /// containing zero for every polynomial.
    pub fn verify(&self, polys: &[MPoly]) -> bool {
        match self {
            Witness::Exact(p) => polys.iter().all(|f| f.eval(p.coords()).is_zero()),
            Witness::Interval { lo, hi } => {
                let bx: Vec<Iv> = lo
                    .iter()
                    .zip(hi)
                    .map(|(a, b)| Iv::new(a.clone(), b.clone()))
                    .collect();
                polys
                    .iter()
                    .all(|f| Iv::eval_mpoly(f, &bx).contains_zero())
            }
            Witness::Float(_) => false,
        }
    }
}

impl Serialize for Witness {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(None)?;
        match self {
            Witness::Exact(p) => {
                m.serialize_entry("kind", "exact")?;
                m.serialize_entry("coords", &p.coord_strings())?;
            }
            Witness::Interval { lo, hi } => {
                m.serialize_entry("kind", "interval")?;
                let strs = |v: &[Rat]| v.iter().map(rat_to_string).collect::<Vec<_>>();
                m.serialize_entry("lo", &strs(lo))?;
                m.serialize_entry("hi", &strs(hi))?;
            }
            Witness::Float(z) => {
                m.serialize_entry("kind", "float")?;
                m.serialize_entry("coords", z)?;
            }
        }
        m.end()
    }
}

/// Why a search was inconclusive.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Evidence {
    pub method: String,
    pub detail: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub best_residual: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub starts: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub best_point: Option<Vec<f64>>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum ZeroSet {
    Empty,
    NonEmpty(Witness),
    Unknown(Evidence),
}

pub fn real_projective_common_zeros(polys: &[MPoly], mode: Mode) -> Result<ZeroSet> {
    real_projective_common_zeros_with(polys, mode, &NumericConfig::default())
}

pub fn real_projective_common_zeros_with(
    polys: &[MPoly],
    mode: Mode,
    cfg: &NumericConfig,
) -> Result<ZeroSet> {
    let first = polys
        .first()
        .ok_or_else(|| Error::precondition("nonempty system", "no polynomials given"))?;
    let k = first.nvars();
    if k == 0 {
        return Err(Error::precondition("projective coordinates", "need at least x0"));
    }
    for p in polys {
        if p.nvars() != k {
            return Err(Error::Arity {
                expected: k,
                found: p.nvars(),
            });
        }
        if !p.is_homogeneous() {
            return Err(Error::NotHomogeneous(p.to_string()));
        }
    }
    let n = k - 1;
    match mode {
        Mode::Exact if n > 2 => Err(Error::ExactModeUnsupported(n)),
        Mode::Exact => Ok(exact(polys)),
        Mode::Auto if n <= 2 => Ok(exact(polys)),
        Mode::Numeric | Mode::Auto => Ok(numeric(polys, cfg)),
    }
}

fn exact(polys: &[MPoly]) -> ZeroSet {
    match projective_point(polys) {
        Affine::Empty => ZeroSet::Empty,
        Affine::Unknown(detail) => ZeroSet::Unknown(Evidence {
            method: "exact".into(),
            detail,
            best_residual: None,
            starts: None,
            best_point: None,
        }),
        Affine::Point(coords) => {
            let w = to_witness(&coords);
            if w.verify(polys) {
                ZeroSet::NonEmpty(w)
            } else {
                ZeroSet::Unknown(Evidence {
                    method: "exact".into(),
                    detail: "witness failed verification".into(),
                    best_residual: None,
                    starts: None,
                    best_point: None,
                })
            }
        }
    }
}

fn to_witness(coords: &[RealRoot]) -> Witness {
    let exact: Option<Vec<Rat>> = coords.iter().map(|c| c.exact().cloned()).collect();
    match exact {
        Some(v) => Witness::Exact(ProjPoint::normalize(&v).expect("a chart coordinate is 1")),
        None => {
            let ivs: Vec<Iv> = coords.iter().map(to_iv).collect();
            Witness::Interval {
                lo: ivs.iter().map(|i| i.lo.clone()).collect(),
                hi: ivs.iter().map(|i| i.hi.clone()).collect(),
            }
        }
    }
}

/// Chart `x0 = 1` first, then the hyperplane `x0 = 0` with one fewer coordinate.
fn projective_point(polys: &[MPoly]) -> Affine {
    let nz: Vec<&MPoly> = polys.iter().filter(|p| !p.is_zero()).collect();
    let k = polys[0].nvars();
    if k == 1 {
        return if nz.is_empty() {
            Affine::Point(vec![RealRoot::Exact(Rat::one())])
        } else {
            Affine::Empty
        };
    }
    let affine: Vec<MPoly> = nz.iter().map(|p| p.dehomogenize()).collect();
    let chart = match k - 1 {
        1 => solve_univariate(&affine),
        2 => solve_bivariate(&affine),
        _ => unreachable!("exact mode is capped at two affine variables"),
    };
    let mut undecided = None;
    match chart {
        Affine::Point(p) => {
            let mut out = vec![RealRoot::Exact(Rat::one())];
            out.extend(p);
            return Affine::Point(out);
        }
        Affine::Unknown(why) => undecided = Some(why),
        Affine::Empty => {}
    }
    let rest: Vec<MPoly> = nz
        .iter()
        .map(|p| p.specialize(0, &Rat::zero()).drop_var(0))
        .collect();
    let rest = if rest.is_empty() {
        vec![MPoly::zero(k - 1)]
    } else {
        rest
    };
    match projective_point(&rest) {
        Affine::Point(p) => {
            let mut out = vec![RealRoot::Exact(Rat::zero())];
            out.extend(p);
            Affine::Point(out)
        }
        Affine::Empty => match undecided {
            Some(why) => Affine::Unknown(why),
            None => Affine::Empty,
        },
        Affine::Unknown(why) => Affine::Unknown(why),
    }
}

fn numeric(polys: &[MPoly], cfg: &NumericConfig) -> ZeroSet {
    let Some(best) = search(polys, cfg) else {
        return ZeroSet::Unknown(Evidence {
            method: "numeric".into(),
            detail: "empty system".into(),
            best_residual: None,
            starts: Some(0),
            best_point: None,
        });
    };
    if best.residual < cfg.tolerance {
        if let Some(pt) = rationalize(polys, &best.point) {
            return ZeroSet::NonEmpty(Witness::Exact(
                ProjPoint::normalize(&pt).expect("nonzero"),
            ));
        }
        return ZeroSet::NonEmpty(Witness::Float(best.point));
    }
    ZeroSet::Unknown(Evidence {
        method: "numeric".into(),
        detail: format!(
            "no start reached residual {:e}; real zeros may still exist",
            cfg.tolerance
        ),
        best_residual: Some(best.residual),
        starts: Some(cfg.starts),
        best_point: Some(best.point),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::rat;

    fn hpoly(nvars: usize, terms: &[(&[u32], i64)]) -> MPoly {
        MPoly::from_terms(nvars, terms.iter().map(|(e, c)| (e.to_vec(), rat(*c))))
    }

    #[test]
    fn definite_form_is_empty() {
        let p = hpoly(3, &[(&[2, 0, 0], 1), (&[0, 2, 0], 1), (&[0, 0, 2], 1)]);
        assert_eq!(real_projective_common_zeros(&[p], Mode::Exact).unwrap(), ZeroSet::Empty);
    }

    #[test]
    fn coordinate_point() {
        let x1 = MPoly::var(3, 1);
        let x2 = MPoly::var(3, 2);
        let z = real_projective_common_zeros(&[x1, x2], Mode::Exact).unwrap();
        assert_eq!(z, ZeroSet::NonEmpty(Witness::Exact(ProjPoint::parse("1:0:0").unwrap())));
    }

    #[test]
    fn errors() {
        let p = hpoly(3, &[(&[1, 0, 0], 1), (&[0, 2, 0], 1)]);
        assert!(matches!(
            real_projective_common_zeros(&[p], Mode::Exact),
            Err(Error::NotHomogeneous(_))
        ));
        let q = MPoly::var(4, 1);
        assert_eq!(
            real_projective_common_zeros(&[q], Mode::Exact),
            Err(Error::ExactModeUnsupported(3))
        );
    }

    #[test]
    fn interval_witness_verifies() {
        // x1^2 = 2 x0^2 on the line x2 = 0
        let p = hpoly(3, &[(&[0, 2, 0], 1), (&[2, 0, 0], -2)]);
        let q = MPoly::var(3, 2);
        let polys = [p, q];
        match real_projective_common_zeros(&polys, Mode::Exact).unwrap() {
            ZeroSet::NonEmpty(w @ Witness::Interval { .. }) => assert!(w.verify(&polys)),
            other => panic!("{other:?}"),
        }
    }
}
