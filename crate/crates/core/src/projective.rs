//! Points of real projective space and exact limits along Laurent paths.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::parser::{RationalPath, RegularMap};
use crate::polyring::rational::{denominators_lcm, rat_to_f64};
use crate::polyring::{compose_path, parse_rat, rat_to_string, LaurentPoly, MPoly, Rat};

/// A point `(x0 : x1 : ... : xm)` with first nonzero coordinate equal to 1.
#[derive(Clone, Debug)]
pub struct ProjPoint {
    coords: Vec<Rat>,
    shadow: Vec<f64>,
}

impl PartialEq for ProjPoint {
    fn eq(&self, other: &Self) -> bool {
        self.coords == other.coords
    }
}

impl Eq for ProjPoint {}

impl std::hash::Hash for ProjPoint {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.coords.hash(state);
    }
}

impl ProjPoint {
    /// Canonical representative of the class of `raw`.
    pub fn normalize(raw: &[Rat]) -> Result<ProjPoint> {
        let first = raw.iter().find(|c| !c.is_zero()).ok_or(Error::ZeroVector)?;
        let inv = first.recip();
        let coords: Vec<Rat> = raw.iter().map(|c| c * &inv).collect();
        let approx: Vec<f64> = coords.iter().map(rat_to_f64).collect();
        let norm = approx.iter().map(|v| v * v).sum::<f64>().sqrt();
        let shadow = approx.iter().map(|v| v / norm).collect();
        Ok(ProjPoint { coords, shadow })
    }

    /// Parses `"(0:1:1/4)"` or `"0:1:1/4"`.
    pub fn parse(s: &str) -> Option<ProjPoint> {
        let s = s.trim();
        let s = s.strip_prefix('(').unwrap_or(s);
        let s = s.strip_suffix(')').unwrap_or(s);
        let raw: Option<Vec<Rat>> = s.split(':').map(parse_rat).collect();
        ProjPoint::normalize(&raw?).ok()
    }

    pub fn coords(&self) -> &[Rat] {
        &self.coords
    }

    /// Unit vector with first nonzero coordinate positive.
    pub fn shadow(&self) -> &[f64] {
        &self.shadow
    }

    /// Dimension `m` of the ambient `RP^m`.
    pub fn dim(&self) -> usize {
        self.coords.len() - 1
    }

    pub fn at_infinity(&self) -> bool {
        self.coords[0].is_zero()
    }

    /// For a point at infinity, the affine direction `(x1, ..., xm)` as a float unit vector.
    pub fn direction(&self) -> Vec<f64> {
        let v: Vec<f64> = self.shadow[1..].to_vec();
        let n = v.iter().map(|a| a * a).sum::<f64>().sqrt();
        v.iter().map(|a| a / n).collect()
    }

    /// Primitive integer representative such as `(0:4:1)`, first nonzero entry positive.
    pub fn integral_string(&self) -> String {
        let l = denominators_lcm(&self.coords);
        let ints: Vec<BigInt> = self.coords.iter().map(|c| (c * Rat::from_integer(l.clone())).to_integer()).collect();
        let g = ints.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
        let parts: Vec<String> = ints.iter().map(|v| (v / &g).to_string()).collect();
        format!("({})", parts.join(":"))
    }

    pub fn coord_strings(&self) -> Vec<String> {
        self.coords.iter().map(rat_to_string).collect()
    }
}

impl fmt::Display for ProjPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.coord_strings().join(":"))
    }
}

impl Serialize for ProjPoint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("ProjPoint", 1)?;
        st.serialize_field("coords", &self.coord_strings())?;
        st.end()
    }
}

pub fn proj_equal(a: &ProjPoint, b: &ProjPoint) -> bool {
    a == b
}

/// `min(|u - v|, |u + v|)` on the unit shadows.
pub fn proj_distance(a: &ProjPoint, b: &ProjPoint) -> Result<f64> {
    if a.coords.len() != b.coords.len() {
        return Err(Error::Arity {
            expected: a.coords.len(),
            found: b.coords.len(),
        });
    }
    Ok(antipodal_distance(&a.shadow, &b.shadow))
}

/// Distance between lines through the origin spanned by unit vectors `u`, `v`.
pub fn antipodal_distance(u: &[f64], v: &[f64]) -> f64 {
    let (mut minus, mut plus) = (0.0, 0.0);
    for (a, b) in u.iter().zip(v) {
        minus += (a - b) * (a - b);
        plus += (a + b) * (a + b);
    }
    minus.min(plus).sqrt()
}

/// Leading data of `(g0 : g1 : ... : gm)` as `t -> 0+`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct LimitResult {
    pub point: ProjPoint,
    pub nu: i64,
    #[serde(serialize_with = "ser_rats")]
    pub leading: Vec<Rat>,
}

fn ser_rats<S: Serializer>(v: &[Rat], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(rat_to_string))
}

/// Limit of the projective tuple of Laurent polynomials.
pub fn tuple_limit(gs: &[LaurentPoly]) -> Result<LimitResult> {
    let nu = gs.iter().filter_map(LaurentPoly::ord).min().ok_or(Error::ZeroVector)?;
    let leading: Vec<Rat> = gs.iter().map(|g| g.coeff(nu)).collect();
    Ok(LimitResult {
        point: ProjPoint::normalize(&leading)?,
        nu,
        leading,
    })
}

/// `lim_{t -> 0+} (f0 : f1 : ... : fm)(alpha(t))`, computed exactly.
pub fn path_limit(f: &RegularMap, alpha: &RationalPath) -> Result<LimitResult> {
    if alpha.len() != f.n() {
        return Err(Error::Arity {
            expected: f.n(),
            found: alpha.len(),
        });
    }
    let gs: Vec<LaurentPoly> = f
        .components()
        .iter()
        .map(|p| compose_path(p, alpha.components()))
        .collect::<Result<_>>()?;
    if gs[0].is_zero() {
        return Err(Error::PoleAlongPath);
    }
    tuple_limit(&gs)
}

/// Limit of `(F0 : ... : Fm)` along a path given in homogeneous coordinates
/// `(x0(t) : ... : xn(t))`.
pub fn homogeneous_limit(fs: &[MPoly], path: &[LaurentPoly]) -> Result<LimitResult> {
    let gs: Vec<LaurentPoly> = fs
        .iter()
        .map(|p| compose_path(p, path))
        .collect::<Result<_>>()?;
    tuple_limit(&gs)
}

/// Float evaluation of the normalized tuple at a given `t`, as a unit vector.
pub fn numeric_value(f: &RegularMap, alpha: &RationalPath, t: f64) -> Vec<f64> {
    let x: Vec<f64> = alpha.components().iter().map(|c| c.eval_f64(t)).collect();
    let vals: Vec<f64> = f.components().iter().map(|p| p.eval_f64(&x)).collect();
    let n = vals.iter().map(|v| v * v).sum::<f64>().sqrt();
    vals.iter().map(|v| v / n).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::{parse_map, parse_path};
    use crate::polyring::{rat, ratio};

    fn pt(s: &str) -> ProjPoint {
        ProjPoint::parse(s).unwrap()
    }

    #[test]
    fn normalization() {
        assert_eq!(ProjPoint::normalize(&[rat(2), rat(4), rat(6)]).unwrap(), pt("1:2:3"));
        assert_eq!(ProjPoint::normalize(&[rat(0), rat(0), rat(-5)]).unwrap(), pt("0:0:1"));
        let p = ProjPoint::normalize(&[rat(0), rat(4), rat(1)]).unwrap();
        assert_eq!(p.integral_string(), "(0:4:1)");
        assert_eq!(pt("1:-2/3:1/2").integral_string(), "(6:-4:3)");
        assert_eq!(p.coords()[2], ratio(1, 4));
        assert!(ProjPoint::normalize(&[rat(0), rat(0)]).is_err());
        assert_eq!(pt("(0:1:1/4)").to_string(), "(0:1:1/4)");
    }

    #[test]
    fn distances() {
        let a = pt("0:1:0");
        let b = ProjPoint::normalize(&[rat(0), rat(-1), rat(0)]).unwrap();
        assert_eq!(proj_distance(&a, &a).unwrap(), 0.0);
        assert_eq!(proj_distance(&a, &b).unwrap(), 0.0);
        let c = pt("0:0:1");
        assert!((proj_distance(&a, &c).unwrap() - 2f64.sqrt()).abs() < 1e-15);
        assert!(proj_distance(&a, &pt("1:0")).is_err());
    }

    #[test]
    fn limits() {
        let f = parse_map("(x^2, y^2) / (1 + (x - 2y)^2)").unwrap();
        let l = path_limit(&f, &parse_path("(2/t, 1/t)").unwrap()).unwrap();
        assert_eq!(l.point, pt("0:4:1"));
        let c = path_limit(&f, &parse_path("(1, 3)").unwrap()).unwrap();
        assert_eq!(c.nu, 0);
        assert_eq!(c.point, ProjPoint::normalize(&[rat(1), rat(1) / rat(26), rat(9) / rat(26)]).unwrap());
    }

    #[test]
    fn json_shape() {
        let v = serde_json::to_value(pt("0:1:1/4")).unwrap();
        assert_eq!(v, serde_json::json!({"coords": ["0", "1", "1/4"]}));
    }
}
