use serde::Serialize;

use super::BridgeResult;
use crate::parser::RationalPath;
use crate::projective::{path_limit, ProjPoint};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifyEntry {
    pub path: String,
    pub expected: ProjPoint,
    /// `None` when the limit could not be computed.
    pub computed: Option<ProjPoint>,
    pub passed: bool,
}

/// Compares `lim g(path)` with each expected point. Mismatches are reported, not raised.
pub fn verify_bridge(res: &BridgeResult, expected: &[(RationalPath, ProjPoint)]) -> Vec<VerifyEntry> {
    expected
        .iter()
        .map(|(path, point)| {
            let computed = path_limit(&res.g, path).ok().map(|l| l.point);
            VerifyEntry {
                path: path.to_text(),
                passed: computed.as_ref() == Some(point),
                expected: point.clone(),
                computed,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bridge::path::{normalize_path, Target};
    use crate::bridge::{build_bridge, hyperbola};
    use crate::parser::{parse_map, parse_path};

    #[test]
    fn identity_expectations() {
        let f = parse_map("(x, y)").unwrap();
        let np = |s: &str| normalize_path(&parse_path(s).unwrap(), Target::Simple).unwrap();
        let res = build_bridge(&f, &np("(1/t, 1)"), &np("(1, 1/t)")).unwrap();
        let a = ProjPoint::parse("0:1:0").unwrap();
        let b = ProjPoint::parse("0:0:1").unwrap();
        let report = verify_bridge(&res, &[(hyperbola(1), a.clone()), (hyperbola(-1), b.clone())]);
        assert!(report.iter().all(|e| e.passed));
        let wrong = verify_bridge(&res, &[(hyperbola(1), b)]);
        assert!(!wrong[0].passed);
        assert!(verify_bridge(&res, &[]).is_empty());
    }
}
