//! Homogenization and the quasi-polynomial test.
//!
//! A reduced map `f = (f1, ..., fm)/f0` of degree `d` is homogenized to
//! `F_i = x0^d f_i(x/x0)`, and `F0 = x0^e F0'` with `x0` not dividing `F0'`.
//! It is quasi-polynomial when `e > 0` and `F0', F1, ..., Fm` have no common real zero
//! in projective space.

pub mod bivariate;
pub mod interval;
pub mod numeric;
pub mod solver;

use std::fmt;
use std::str::FromStr;

use num_traits::Signed;
use serde::ser::SerializeMap;
use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::parser::RegularMap;
use crate::polyring::MPoly;

pub use numeric::NumericConfig;
pub use solver::{real_projective_common_zeros, real_projective_common_zeros_with, Evidence, Witness, ZeroSet};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Numeric,
    #[default]
    Auto,
}

impl FromStr for Mode {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s {
            "exact" => Ok(Mode::Exact),
            "numeric" => Ok(Mode::Numeric),
            "auto" => Ok(Mode::Auto),
            other => Err(format!("unknown mode `{other}` (expected exact, numeric or auto)")),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct HomogenizedMap {
    pub n: usize,
    pub m: usize,
    pub d: u32,
    pub e: u32,
    /// `F0 = x0^e F0'`
    pub f0: MPoly,
    pub f0prime: MPoly,
    pub fs: Vec<MPoly>,
}

pub fn homogenize_map(f: &RegularMap) -> Result<HomogenizedMap> {
    if f.fs().iter().all(MPoly::is_zero) {
        return Err(Error::ZeroPolynomial("zero map"));
    }
    let d = f.degree();
    let f0 = f.f0().homogenize(d)?;
    let (e, f0prime) = f0.x0_valuation()?;
    let fs = f
        .fs()
        .iter()
        .map(|p| p.homogenize(d))
        .collect::<Result<Vec<_>>>()?;
    Ok(HomogenizedMap {
        n: f.n(),
        m: f.m(),
        d,
        e,
        f0,
        f0prime,
        fs,
    })
}

pub fn degree_condition(h: &HomogenizedMap) -> bool {
    h.e > 0
}

/// All coefficients positive, all exponents even, and a pure power of every variable:
/// such a form vanishes only at the origin. Products and powers of these forms have the
/// same shape, so no factoring is needed.
pub fn positivity_pattern(p: &MPoly) -> bool {
    if p.is_zero() || !p.is_homogeneous() {
        return false;
    }
    let k = p.nvars();
    let mut pure = vec![false; k];
    for (mono, c) in p.terms() {
        if !c.is_positive() || mono.0.iter().any(|e| e % 2 == 1) {
            return false;
        }
        let support: Vec<usize> = (0..k).filter(|&i| mono.0[i] > 0).collect();
        if support.len() == 1 {
            pure[support[0]] = true;
        }
    }
    p.is_constant() || pure.iter().all(|&b| b)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Status {
    QuasiPolynomial,
    NotQuasiPolynomial,
    Unknown,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Status::QuasiPolynomial => "QuasiPolynomial",
            Status::NotQuasiPolynomial => "NotQuasiPolynomial",
            Status::Unknown => "Unknown",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Reason {
    DegreeConditionFailed,
    RealIndeterminacyOnE(Witness),
    EmptinessUndecided(Evidence),
    /// One-dimensional domain: the degree condition suffices.
    OneDimensional,
    /// `F0'` is a nonzero constant.
    ConstantF0Prime,
    /// `F0'` is syntactically positive definite.
    PositivityPattern,
    /// The common zero set was shown empty by the exact solver.
    NoRealCommonZeros,
}

impl Reason {
    pub fn name(&self) -> &'static str {
        match self {
            Reason::DegreeConditionFailed => "DegreeConditionFailed",
            Reason::RealIndeterminacyOnE(_) => "RealIndeterminacyOnE",
            Reason::EmptinessUndecided(_) => "EmptinessUndecided",
            Reason::OneDimensional => "OneDimensional",
            Reason::ConstantF0Prime => "ConstantF0Prime",
            Reason::PositivityPattern => "PositivityPattern",
            Reason::NoRealCommonZeros => "NoRealCommonZeros",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct QPVerdict {
    pub status: Status,
    pub reason: Reason,
    pub n: usize,
    pub d: u32,
    pub e: u32,
    pub f0prime: MPoly,
    pub mode: Mode,
}

impl QPVerdict {
    pub fn witness(&self) -> Option<&Witness> {
        match &self.reason {
            Reason::RealIndeterminacyOnE(w) => Some(w),
            _ => None,
        }
    }
}

impl Serialize for QPVerdict {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(None)?;
        m.serialize_entry("status", &self.status)?;
        m.serialize_entry("reason", self.reason.name())?;
        m.serialize_entry("e", &self.e)?;
        m.serialize_entry("d", &self.d)?;
        m.serialize_entry("F0prime", &self.f0prime.to_string())?;
        m.serialize_entry("mode", &self.mode)?;
        if let Some(w) = self.witness() {
            m.serialize_entry("witness", w)?;
        }
        if let Reason::EmptinessUndecided(ev) = &self.reason {
            m.serialize_entry("evidence", ev)?;
        }
        m.end()
    }
}

pub fn classify(f: &RegularMap) -> Result<QPVerdict> {
    classify_with(f, Mode::Auto, &NumericConfig::default())
}

pub fn classify_with(f: &RegularMap, mode: Mode, cfg: &NumericConfig) -> Result<QPVerdict> {
    if !f.is_reduced() {
        return Err(Error::Unreduced);
    }
    let h = homogenize_map(f)?;
    if mode == Mode::Exact && h.n > 2 {
        return Err(Error::ExactModeUnsupported(h.n));
    }
    let verdict = |status, reason| QPVerdict {
        status,
        reason,
        n: h.n,
        d: h.d,
        e: h.e,
        f0prime: h.f0prime.clone(),
        mode,
    };
    if !degree_condition(&h) {
        return Ok(verdict(Status::NotQuasiPolynomial, Reason::DegreeConditionFailed));
    }
    if h.n == 1 {
        return Ok(verdict(Status::QuasiPolynomial, Reason::OneDimensional));
    }
    if h.f0prime.is_constant() {
        return Ok(verdict(Status::QuasiPolynomial, Reason::ConstantF0Prime));
    }
    if positivity_pattern(&h.f0prime) {
        return Ok(verdict(Status::QuasiPolynomial, Reason::PositivityPattern));
    }
    let mut system = vec![h.f0prime.clone()];
    system.extend(h.fs.iter().cloned());
    let out = match real_projective_common_zeros_with(&system, mode, cfg)? {
        ZeroSet::Empty => verdict(Status::QuasiPolynomial, Reason::NoRealCommonZeros),
        ZeroSet::NonEmpty(w) if w.is_certified() => {
            verdict(Status::NotQuasiPolynomial, Reason::RealIndeterminacyOnE(w))
        }
        ZeroSet::NonEmpty(Witness::Float(z)) => verdict(
            Status::Unknown,
            Reason::EmptinessUndecided(Evidence {
                method: "numeric".into(),
                detail: "near-zero found but not confirmed exactly".into(),
                best_residual: None,
                starts: Some(cfg.starts),
                best_point: Some(z),
            }),
        ),
        ZeroSet::NonEmpty(_) => unreachable!(),
        ZeroSet::Unknown(ev) => verdict(Status::Unknown, Reason::EmptinessUndecided(ev)),
    };
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_map;
    use crate::projective::ProjPoint;

    const EX_III: &str = "((1+x^4)^4*y^6, (1+y^4)^3*x^4) / ((1+y^4)^2*(1+x^4)^3)";

    #[test]
    fn homogenization_data() {
        let f = parse_map(EX_III).unwrap();
        let h = homogenize_map(&f).unwrap();
        assert_eq!((h.d, h.e), (22, 2));
        let v = |i| MPoly::var(3, i).pow(4);
        let expect = (&v(0) + &v(1)).pow(3) * (&v(0) + &v(2)).pow(2);
        assert_eq!(h.f0prime, expect);
        let g = homogenize_map(&parse_map("(x, y^2 + x^2)").unwrap()).unwrap();
        assert_eq!((g.d, g.e), (2, 2));
        assert!(g.f0prime.is_constant());
    }

    #[test]
    fn verdicts() {
        let v = classify(&parse_map(EX_III).unwrap()).unwrap();
        assert_eq!(v.status, Status::NotQuasiPolynomial);
        assert_eq!(
            v.witness().and_then(Witness::exact),
            Some(&ProjPoint::parse("0:1:0").unwrap())
        );
        let ii = parse_map("(x^2*(1+x^2), y^2*(1+y^2)) / ((1+x^2)*(1+y^2))").unwrap();
        let v = classify(&ii).unwrap();
        assert_eq!(v.reason, Reason::DegreeConditionFailed);
        let r = parse_map("(1, (1 + x^2)^2) / (1 + x^2)").unwrap();
        assert_eq!(classify(&r).unwrap().status, Status::QuasiPolynomial);
        let p = parse_map("(x*y, x - y^3)").unwrap();
        assert_eq!(classify(&p).unwrap().status, Status::QuasiPolynomial);
    }

    #[test]
    fn pattern() {
        let f = parse_map("(x^3, y^3) / (1 + x^2 + y^2)").unwrap();
        let h = homogenize_map(&f).unwrap();
        assert!(positivity_pattern(&h.f0prime));
        assert_eq!(classify(&f).unwrap().reason, Reason::PositivityPattern);
        // F0' = x0^2 + x1^2 vanishes at (0:0:1), where F2 = x2^3 does not
        let g = parse_map("(x^3, y^3) / (1 + x^2)").unwrap();
        assert_eq!(classify(&g).unwrap().reason, Reason::NoRealCommonZeros);
        let g = parse_map("(x^3, x*y^2) / (1 + x^2)").unwrap();
        let v = classify(&g).unwrap();
        assert_eq!(v.status, Status::NotQuasiPolynomial);
        assert_eq!(
            v.witness().and_then(Witness::exact),
            Some(&ProjPoint::parse("0:0:1").unwrap())
        );
    }
}
