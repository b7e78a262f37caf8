//! Auxiliary maps from the plane that carry prescribed paths at infinity.
//!
//! [`build_bridge`] interpolates between two paths along the hyperbolas `xy = 1` and
//! `xy = -1`. [`build_qp_bridge`] produces a quasi-polynomial map `g = f∘h` whose image at
//! infinity contains both the limit of `f` along a path and the limit along `(1/t, 0, ..., 0)`.

pub mod path;
pub mod qp;
pub mod simple;
pub mod verify;

use serde_json::{json, Value};

use crate::classifier::QPVerdict;
use crate::parser::{RationalPath, RegularMap};
use crate::polyring::{rat, LaurentPoly};
use crate::projective::{path_limit, LimitResult};

pub use path::{normalize_path, NormalizedPath, Target};
pub use qp::{build_qp_bridge, qp_bridge, QpData};
pub use simple::build_bridge;
pub use verify::{verify_bridge, VerifyEntry};

/// One exactly checked identity.
#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    pub fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Check {
        Check {
            name: name.into(),
            passed,
            detail: detail.into(),
        }
    }

    fn to_json(&self) -> Value {
        json!({"name": self.name, "passed": self.passed, "detail": self.detail})
    }
}

/// A limit along a named path, or the reason it could not be computed.
#[derive(Clone, Debug, PartialEq)]
pub struct NamedLimit {
    pub name: String,
    pub path: String,
    pub limit: std::result::Result<LimitResult, String>,
}

impl NamedLimit {
    pub fn compute(name: &str, f: &RegularMap, path: &RationalPath) -> NamedLimit {
        NamedLimit {
            name: name.into(),
            path: path.to_text(),
            limit: path_limit(f, path).map_err(|e| e.to_string()),
        }
    }

    pub fn point(&self) -> Option<&crate::projective::ProjPoint> {
        self.limit.as_ref().ok().map(|l| &l.point)
    }

    fn to_json(&self) -> Value {
        match &self.limit {
            Ok(l) => json!({"name": self.name, "path": self.path, "point": l.point.to_string(), "nu": l.nu}),
            Err(e) => json!({"name": self.name, "path": self.path, "error": e}),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct BridgeResult {
    pub target: Target,
    /// `h : R^2 -> R^n`
    pub h: RegularMap,
    /// `g = f∘h`, reduced.
    pub g: RegularMap,
    pub checks: Vec<Check>,
    pub limits: Vec<NamedLimit>,
    pub verdict: Option<QPVerdict>,
    pub qp: Option<QpData>,
}

impl BridgeResult {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn limit(&self, name: &str) -> Option<&NamedLimit> {
        self.limits.iter().find(|l| l.name == name)
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "target": self.target,
            "h": self.h.to_text(),
            "g": self.g.to_text(),
            "all_passed": self.all_passed(),
            "checks": self.checks.iter().map(Check::to_json).collect::<Vec<_>>(),
            "limits": self.limits.iter().map(NamedLimit::to_json).collect::<Vec<_>>(),
        });
        if let Some(verdict) = &self.verdict {
            v["verdict"] = serde_json::to_value(verdict).expect("verdict serializes");
        }
        if let Some(q) = &self.qp {
            v["qp"] = q.to_json();
        }
        v
    }
}

/// Path `(t, c/t)` in the plane.
pub fn hyperbola(c: i64) -> RationalPath {
    RationalPath::new(vec![
        LaurentPoly::monomial(1, rat(1)),
        LaurentPoly::monomial(-1, rat(c)),
    ])
    .expect("nonempty")
}

/// Path `(t^a, 0)` in the plane.
pub fn axis(a: i64) -> RationalPath {
    RationalPath::new(vec![LaurentPoly::monomial(a, rat(1)), LaurentPoly::zero()])
        .expect("nonempty")
}

/// `(1/t, 0, ..., 0)` in `R^n`.
pub fn first_axis(n: usize) -> RationalPath {
    let mut c = vec![LaurentPoly::zero(); n];
    c[0] = LaurentPoly::monomial(-1, rat(1));
    RationalPath::new(c).expect("nonempty")
}
