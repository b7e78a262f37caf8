use super::path::NormalizedPath;
use super::{hyperbola, BridgeResult, Check, NamedLimit, Target};
use crate::error::{Error, Result};
use crate::parser::RegularMap;
use crate::polyring::{compose_path, ratio, MPoly, UPoly};

/// `y^{|k|} p(x)` for `k < 0`, else `x^k p(x)`; `sign` replaces `y` by `sign * y`.
pub(crate) fn lift(p: &UPoly, k: Option<i64>, sign: i64) -> MPoly {
    let Some(k) = k else {
        return MPoly::zero(2);
    };
    let px = p.to_mpoly(2, 0);
    let factor = if k < 0 {
        MPoly::var(2, 1)
            .scale(&ratio(sign, 1))
            .pow(k.unsigned_abs() as u32)
    } else {
        MPoly::var(2, 0).pow(k as u32)
    };
    &factor * &px
}

pub fn build_bridge(f: &RegularMap, alpha: &NormalizedPath, beta: &NormalizedPath) -> Result<BridgeResult> {
    let n = f.n();
    for len in [alpha.len(), beta.len()] {
        if len != n {
            return Err(Error::Arity {
                expected: n,
                found: len,
            });
        }
    }
    let xy = &MPoly::var(2, 0) * &MPoly::var(2, 1);
    let one = MPoly::one(2);
    let a = (&xy + &one).scale(&ratio(1, 2));
    let b = (&one - &xy).scale(&ratio(1, 2));
    let hs: Vec<MPoly> = (0..n)
        .map(|i| {
            let p = lift(&alpha.p[i], alpha.k[i], 1);
            let q = lift(&beta.p[i], beta.k[i], -1);
            &(&a * &p) + &(&b * &q)
        })
        .collect();
    let h = RegularMap::polynomial(2, hs.clone())?;
    let g = f.compose(&h)?;

    let plus = hyperbola(1);
    let minus = hyperbola(-1);
    let along = |path: &crate::parser::RationalPath| -> Result<Vec<_>> {
        hs.iter().map(|p| compose_path(p, path.components())).collect()
    };
    let ha = along(&plus)?;
    let hb = along(&minus)?;
    let mut checks = vec![
        Check::new(
            "h(t, 1/t) = alpha(t)",
            ha == alpha.components(),
            alpha.base.to_text(),
        ),
        Check::new(
            "h(t, -1/t) = beta(t)",
            hb == beta.components(),
            beta.base.to_text(),
        ),
    ];
    let limits = vec![
        NamedLimit::compute("g along (t, 1/t)", &g, &plus),
        NamedLimit::compute("g along (t, -1/t)", &g, &minus),
        NamedLimit::compute("f along alpha", f, &alpha.base),
        NamedLimit::compute("f along beta", f, &beta.base),
    ];
    for (gl, fl, name) in [(0, 2, "alpha"), (1, 3, "beta")] {
        if let (Some(p), Some(q)) = (limits[gl].point(), limits[fl].point()) {
            checks.push(Check::new(
                format!("limit of g matches limit of f along {name}"),
                p == q,
                format!("{p} vs {q}"),
            ));
        }
    }
    Ok(BridgeResult {
        target: Target::Simple,
        h,
        g,
        checks,
        limits,
        verdict: None,
        qp: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bridge::path::{normalize_path, Target};
    use crate::parser::{parse_map, parse_path};
    use crate::projective::ProjPoint;

    fn np(s: &str) -> NormalizedPath {
        normalize_path(&parse_path(s).unwrap(), Target::Simple).unwrap()
    }

    #[test]
    fn identity_bridge() {
        let f = parse_map("(x, y)").unwrap();
        let r = build_bridge(&f, &np("(1/t, 1)"), &np("(1, 1/t)")).unwrap();
        assert!(r.all_passed(), "{:?}", r.checks);
        let expect = parse_map(
            "((x*y + 1)/2 * y + (1 - x*y)/2, (x*y + 1)/2 + (1 - x*y)/2 * (-y))",
        )
        .unwrap();
        assert_eq!(r.h, expect);
        assert_eq!(r.limits[0].point(), Some(&ProjPoint::parse("0:1:0").unwrap()));
        assert_eq!(r.limits[1].point(), Some(&ProjPoint::parse("0:0:1").unwrap()));
    }

    #[test]
    fn arity() {
        let f = parse_map("(x, y, z)").unwrap();
        assert!(matches!(
            build_bridge(&f, &np("(1/t, 1)"), &np("(1, 1/t)")),
            Err(Error::Arity { .. })
        ));
    }
}
