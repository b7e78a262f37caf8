use num_traits::Zero;
use serde_json::{json, Value};

use super::path::{normalize_path, p_at_zero, qp_orders_ok, NormalizedPath, Target};
use super::{axis, first_axis, hyperbola, BridgeResult, Check, NamedLimit};
use crate::classifier::{classify_with, Mode, NumericConfig, Status};
use crate::error::{Error, Result};
use crate::parser::{RationalPath, RegularMap};
use crate::polyring::shear::{find_normalizing_shear, NormalizingShear};
use crate::polyring::{compose_path, rat, rat_to_string, LaurentPoly, MPoly};
use crate::projective::homogeneous_limit;

/// Construction data of the quasi-polynomial bridge.
#[derive(Clone, Debug, PartialEq)]
pub struct QpData {
    pub ell0: u32,
    pub ell: u32,
    pub k_i0: i64,
    /// `4 ell + |k_i0|`
    pub mu: u32,
    pub d: u32,
    pub e: u32,
    /// Path fed to the construction (after reparametrization and domain shear).
    pub path: String,
    pub reparam: u32,
    /// `lim f(1/t, 0, ..., 0)`
    pub p0: NamedLimit,
    /// The same point read off `(F0 : ... : Fm)(1 : 1/t : 0 : ... : 0)`.
    pub p0_homogeneous: std::result::Result<String, String>,
    /// `lim f(alpha(t))`
    pub q: NamedLimit,
    /// Whether `g(t, 1/t)` reaches `q`; this needs `ell` at least the order of contact,
    /// which is not computed, so it is reported rather than required.
    pub q_agrees: bool,
    pub prepared: Option<Prepared>,
}

/// Coordinate changes applied by [`qp_bridge`] and the bridge in the input coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct Prepared {
    pub shear: NormalizingShear,
    pub f_normalized: RegularMap,
    pub h_original: RegularMap,
    pub g_original: RegularMap,
    pub limits: Vec<NamedLimit>,
}

impl QpData {
    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "ell0": self.ell0,
            "ell": self.ell,
            "k_i0": self.k_i0,
            "mu": self.mu,
            "d": self.d,
            "e": self.e,
            "path": self.path,
            "reparam": self.reparam,
            "p0": self.p0.to_json(),
            "q": self.q.to_json(),
            "q_agrees": self.q_agrees,
        });
        v["p0_homogeneous"] = match &self.p0_homogeneous {
            Ok(p) => json!(p),
            Err(e) => json!({"error": e}),
        };
        if let Some(p) = &self.prepared {
            let strs = |v: &[crate::polyring::Rat]| v.iter().map(rat_to_string).collect::<Vec<_>>();
            v["prepared"] = json!({
                "pivot": p.shear.pivot + 1,
                "range_shear": strs(&p.shear.range),
                "domain_shear": strs(&p.shear.domain),
                "f_normalized": p.f_normalized.to_text(),
                "h_original": p.h_original.to_text(),
                "g_original": p.g_original.to_text(),
                "limits": p.limits.iter().map(NamedLimit::to_json).collect::<Vec<_>>(),
            });
        }
        v
    }
}

/// `(xy - 1)^2 + y^4`
fn denominator() -> MPoly {
    let xy = &MPoly::var(2, 0) * &MPoly::var(2, 1);
    let a = &xy - &MPoly::one(2);
    &(&a * &a) + &MPoly::var(2, 1).pow(4)
}

fn exact_mode(n: usize) -> Mode {
    if n <= 2 {
        Mode::Exact
    } else {
        Mode::Auto
    }
}

fn require_qp(f: &RegularMap, what: &str) -> Result<()> {
    let v = classify_with(f, exact_mode(f.n()), &NumericConfig::default())?;
    match v.status {
        Status::QuasiPolynomial => Ok(()),
        Status::NotQuasiPolynomial => Err(Error::precondition(
            "quasi-polynomial",
            format!("{what} is not quasi-polynomial ({})", v.reason.name()),
        )),
        Status::Unknown => Err(Error::precondition(
            "quasi-polynomial",
            format!("classifier returned Unknown on {what}"),
        )),
    }
}

/// The construction on a map that already satisfies the degree normalizations.
pub fn build_qp_bridge(f: &RegularMap, alpha: &NormalizedPath, ell_user: Option<u32>) -> Result<BridgeResult> {
    let n = f.n();
    if alpha.len() != n {
        return Err(Error::Arity {
            expected: n,
            found: alpha.len(),
        });
    }
    if !f.is_reduced() {
        return Err(Error::Unreduced);
    }
    let d = f.degree();
    let deg0 = f.f0().total_degree().unwrap();
    if f.fs().iter().any(|p| p.total_degree().finite() != Some(d)) || deg0 >= d {
        return Err(Error::precondition(
            "equal numerator degrees",
            format!("need deg f1 = ... = deg fm = d > deg f0; got numerators of degrees {:?} and deg f0 = {deg0}",
                f.fs().iter().map(|p| p.total_degree().to_string()).collect::<Vec<_>>()),
        ));
    }
    for (j, p) in f.components().iter().enumerate() {
        if p.total_degree() != p.degree_in(0) {
            return Err(Error::precondition(
                "degree in x1",
                format!("component f{j} has total degree {} but degree {} in x1", p.total_degree(), p.degree_in(0)),
            ));
        }
    }
    if !qp_orders_ok(alpha) {
        return Err(Error::precondition(
            "qp-normalized path",
            format!("minimal order {} must be even and at most -6", alpha.k_i0()),
        ));
    }
    let p10 = p_at_zero(alpha, 0);
    if p10.is_zero() {
        return Err(Error::precondition("first component nonzero", "alpha_1 is identically zero"));
    }
    require_qp(f, "f")?;

    let e = d - deg0;
    let k = alpha.k_i0();
    let kabs = k.unsigned_abs() as u32;
    // q_j, e_j with j + k_i + 1 = 4 q_j + e_j
    let split = |s: i64| ((s / 4) as u32, (s % 4) as u32);
    let ell0 = (0..n)
        .filter_map(|i| {
            let ki = alpha.k[i]?;
            let di = alpha.p[i].degree()? as i64;
            (di + ki >= 0).then(|| split(di + ki + 1).0)
        })
        .max()
        .unwrap_or(0);
    let ell = ell0.max(ell_user.unwrap_or(ell0));
    let mu = 4 * ell + kabs;

    let dd = denominator();
    let dpow: Vec<MPoly> = (0..=ell).map(|j| dd.pow(j)).collect();
    let (x, y) = (MPoly::var(2, 0), MPoly::var(2, 1));
    // D^ell * P_i
    let scaled_p = |i: usize| -> MPoly {
        let mut acc = MPoly::zero(2);
        let Some(ki) = alpha.k[i] else {
            return acc;
        };
        for (j, a) in alpha.p[i].coeffs().iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let s = j as i64 + ki;
            let term = if s < 0 {
                &y.pow(s.unsigned_abs() as u32) * &dpow[ell as usize]
            } else {
                let (q, ej) = split(s + 1);
                &(&x.pow(ej) * &y) * &dpow[(ell - q) as usize]
            };
            acc = &acc + &term.scale(a);
        }
        acc
    };
    let mut hs = vec![dpow[ell as usize].clone()];
    for i in 0..n {
        let mut hi = scaled_p(i);
        if i == 0 {
            hi = &hi + &x.pow(mu).scale(&p10);
        }
        hs.push(hi);
    }
    let h = RegularMap::new(hs[0].clone(), hs[1..].to_vec())?;
    let comps = f.compose_components(&hs)?;
    let g_unreduced = RegularMap::new(comps[0].clone(), comps[1..].to_vec())?;
    let g = g_unreduced.clone().reduce()?;

    let mut checks = Vec::new();

    // (1) h(t, 1/t) = alpha(t) + (p1(0) t^(8 ell + |k|), 0, ..., 0)
    let plus = hyperbola(1);
    let at = |p: &MPoly, path: &RationalPath| compose_path(p, path.components());
    let h0_plus = at(&hs[0], &plus)?;
    let mut ok1 = true;
    for i in 0..n {
        let mut target = alpha.components()[i].clone();
        if i == 0 {
            target = &target + &LaurentPoly::monomial((8 * ell + kabs) as i64, p10.clone());
        }
        ok1 &= at(&hs[i + 1], &plus)? == &h0_plus * &target;
    }
    checks.push(Check::new(
        "(1) h(t, 1/t) = alpha(t) + (p1(0) t^(8l+|k|), 0, ..., 0)",
        ok1,
        format!("l = {ell}, |k| = {kabs}"),
    ));

    // (2) h(t, 0) = (p1(0) t^(4l+|k|), 0, ..., 0)
    let x_axis = axis(1);
    let h0_axis = at(&hs[0], &x_axis)?;
    let mut ok2 = h0_axis == LaurentPoly::one();
    for i in 0..n {
        let expect = if i == 0 {
            LaurentPoly::monomial(mu as i64, p10.clone())
        } else {
            LaurentPoly::zero()
        };
        ok2 &= at(&hs[i + 1], &x_axis)? == expect;
    }
    checks.push(Check::new(
        "(2) h(t, 0) = (p1(0) t^(4l+|k|), 0, ..., 0)",
        ok2,
        format!("mu = {mu}"),
    ));

    // (3) deg g0 = d(4l + |k|) - e|k|
    let want = d * mu - e * kabs;
    let got = comps[0].total_degree();
    checks.push(Check::new(
        "(3) deg g0 = d(4l+|k|) - e|k|",
        got.finite() == Some(want),
        format!("deg g0 = {got}, expected {want}"),
    ));

    // (4) homogenizing g at degree d*mu leaves x0^(e|k|) G0' with x0 not dividing G0'
    let top = g_unreduced.degree();
    let (eg, g0p) = comps[0].homogenize(top)?.x0_valuation()?;
    let x0_free = !g0p.specialize(0, &rat(0)).is_zero();
    checks.push(Check::new(
        "(4) x0 does not divide G0'",
        top == d * mu && eg == e * kabs && x0_free,
        format!("deg g = {top}, x0-valuation of G0 = {eg}, expected {}", e * kabs),
    ));

    // (5) g is quasi-polynomial
    let verdict = classify_with(&g, exact_mode(2), &NumericConfig::default())?;
    checks.push(Check::new(
        "(5) classify(g) = QuasiPolynomial",
        verdict.status == Status::QuasiPolynomial,
        format!("{} ({})", verdict.status, verdict.reason.name()),
    ));

    // (6) limits
    let limits = vec![
        NamedLimit::compute("g along (t, 1/t)", &g, &plus),
        NamedLimit::compute("g along (1/t, 0)", &g, &axis(-1)),
    ];
    let p0 = NamedLimit::compute("f along (1/t, 0, ..., 0)", f, &first_axis(n));
    let q = NamedLimit::compute("f along alpha", f, &alpha.base);
    let mut hom_path = vec![LaurentPoly::one(), LaurentPoly::monomial(-1, rat(1))];
    hom_path.extend(std::iter::repeat_n(LaurentPoly::zero(), n - 1));
    let p0_homogeneous = homogeneous_limit(&f.homogenized()?, &hom_path)
        .map(|l| l.point.to_string())
        .map_err(|e| e.to_string());
    if let Some(p) = p0.point() {
        checks.push(Check::new(
            "p0 along (1/t, 0) agrees for f and g",
            limits[1].point() == Some(p) && p0_homogeneous.as_deref() == Ok(&p.to_string()),
            format!("{p}"),
        ));
    }
    let q_agrees = matches!((limits[0].point(), q.point()), (Some(a), Some(b)) if a == b);

    Ok(BridgeResult {
        target: Target::Qp,
        h,
        g,
        checks,
        limits,
        verdict: Some(verdict),
        qp: Some(QpData {
            ell0,
            ell,
            k_i0: k,
            mu,
            d,
            e,
            path: alpha.base.to_text(),
            reparam: alpha.reparam,
            p0,
            p0_homogeneous,
            q,
            q_agrees,
            prepared: None,
        }),
    })
}

/// Full pipeline from an arbitrary quasi-polynomial map: checks the map, reparametrizes
/// the path, applies the normalizing shears, builds the bridge, and maps it back to the
/// input coordinates.
pub fn qp_bridge(f: &RegularMap, alpha: &RationalPath, ell_user: Option<u32>) -> Result<BridgeResult> {
    if alpha.len() != f.n() {
        return Err(Error::Arity {
            expected: f.n(),
            found: alpha.len(),
        });
    }
    require_qp(f, "f")?;
    let np = normalize_path(alpha, Target::Qp)?;
    let (shear, fnorm) = find_normalizing_shear(f)?;
    // f'(x) = f(x1, x2 + a2 x1, ...), so the path in the new coordinates is
    // (alpha_1, alpha_2 - a2 alpha_1, ...)
    let a1 = np.components()[0].clone();
    let comps: Vec<LaurentPoly> = np
        .components()
        .iter()
        .enumerate()
        .map(|(i, c)| {
            if i == 0 || shear.domain[i].is_zero() {
                c.clone()
            } else {
                c - &a1.scale(&shear.domain[i])
            }
        })
        .collect();
    let mut moved = NormalizedPath::split(RationalPath::new(comps)?)?;
    moved.reparam = np.reparam;
    let mut res = build_qp_bridge(&fnorm, &moved, ell_user)?;

    let hs = res.h.components();
    let mut orig = vec![hs[0].clone()];
    for i in 0..f.n() {
        let hi = &hs[i + 1];
        orig.push(if i == 0 || shear.domain[i].is_zero() {
            hi.clone()
        } else {
            hi + &hs[1].scale(&shear.domain[i])
        });
    }
    let h_original = RegularMap::new(orig[0].clone(), orig[1..].to_vec())?;
    let g_comps = f.compose_components(&orig)?;
    let g_original = RegularMap::new(g_comps[0].clone(), g_comps[1..].to_vec())?.reduce()?;
    let limits = vec![
        NamedLimit::compute("g_original along (t, 1/t)", &g_original, &hyperbola(1)),
        NamedLimit::compute("g_original along (1/t, 0)", &g_original, &axis(-1)),
        NamedLimit::compute("f along reparametrized alpha", f, &np.base),
        NamedLimit::compute("f along (1/t, 0, ..., 0)", f, &first_axis(f.n())),
    ];
    if let Some(q) = res.qp.as_mut() {
        q.prepared = Some(Prepared {
            shear,
            f_normalized: fnorm,
            h_original,
            g_original,
            limits,
        });
    }
    Ok(res)
}
