//! Numeric estimate of the set at infinity of a map image or a semialgebraic set.
//!
//! Directions of far-away points are clustered on the sphere with the antipodal metric,
//! once per escape radius. A component count that agrees across radii is the signal; the
//! obstruction verdict built on it is one-sided.

pub mod cluster;
mod map;
mod set;
pub mod svg;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize, Serializer};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::parser::{RegularMap, SemialgebraicSet};
use crate::projective::{antipodal_distance, ProjPoint};

pub use cluster::{component_count, component_labels, Cluster};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SampleConfig {
    /// Escape radii, strictly increasing.
    pub radii: Vec<f64>,
    pub n_samples: usize,
    /// Clustering radius on the unit sphere.
    pub eps: f64,
    pub seed: u64,
    pub max_domain_norm: f64,
    /// Points at infinity such as `"0:1:0"` to match cluster centroids against.
    pub candidates: Vec<String>,
    /// Include every direction at the largest radius in the JSON report.
    pub emit_directions: bool,
}

impl Default for SampleConfig {
    fn default() -> Self {
        SampleConfig {
            radii: vec![1e4, 1e6, 1e8],
            n_samples: 20_000,
            eps: 0.05,
            seed: 42,
            max_domain_norm: 1e8,
            candidates: Vec::new(),
            emit_directions: false,
        }
    }
}

impl SampleConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidConfig(m.to_string()));
        if self.radii.is_empty() {
            return bad("radii must be nonempty");
        }
        if self.radii.iter().any(|r| !(r.is_finite() && *r > 0.0)) {
            return bad("radii must be positive and finite");
        }
        if self.radii.windows(2).any(|w| w[0] >= w[1]) {
            return bad("radii must be strictly increasing");
        }
        if !(self.eps > 0.0 && self.eps < 1.0) {
            return bad("eps must lie in (0, 1)");
        }
        if self.n_samples < 100 {
            return bad("n_samples must be at least 100");
        }
        if !(self.max_domain_norm.is_finite() && self.max_domain_norm > 1.0) {
            return bad("max_domain_norm must be finite and greater than 1");
        }
        self.candidate_points()?;
        Ok(())
    }

    pub fn from_json(text: &str) -> Result<SampleConfig> {
        let cfg: SampleConfig =
            serde_json::from_str(text).map_err(|e| Error::InvalidConfig(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    fn candidate_points(&self) -> Result<Vec<ProjPoint>> {
        self.candidates
            .iter()
            .map(|s| {
                ProjPoint::parse(s)
                    .ok_or_else(|| Error::InvalidConfig(format!("bad candidate point `{s}`")))
            })
            .collect()
    }
}

/// Independent generator for batch `index`.
pub(crate) fn batch_rng(seed: u64, index: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ index.wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

/// Component count agreed on by every radius, or `Unstable`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Stability {
    Stable(usize),
    Unstable,
}

impl Serialize for Stability {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Stability::Stable(n) => s.serialize_u64(*n as u64),
            Stability::Unstable => s.serialize_str("unstable"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RadiusReport {
    pub radius: f64,
    /// Candidate samples drawn at this radius.
    pub evaluated: usize,
    pub kept: usize,
    /// Samples dropped because the denominator was below the float guard.
    pub skipped: usize,
    pub component_count: usize,
    pub clusters: Vec<Cluster>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InfinityReport {
    /// `"map"` or `"set"`.
    pub source: &'static str,
    /// Dimension `m` of the target space.
    pub dim: usize,
    pub per_radius: Vec<RadiusReport>,
    pub stable_count: Stability,
    pub possibly_empty: bool,
    /// Unit directions at the largest radius, first nonzero coordinate positive.
    pub directions: Vec<Vec<f64>>,
    pub warnings: Vec<String>,
    pub config: SampleConfig,
}

impl InfinityReport {
    /// Clusters at the largest radius.
    pub fn clusters(&self) -> &[Cluster] {
        self.per_radius.last().map_or(&[], |r| &r.clusters)
    }

    pub fn counts(&self) -> Vec<usize> {
        self.per_radius.iter().map(|r| r.component_count).collect()
    }

    pub fn to_json(&self) -> Value {
        let mut v = serde_json::to_value(self).expect("report serializes");
        if !self.config.emit_directions {
            v.as_object_mut().unwrap().remove("directions");
        }
        v
    }
}

fn assemble(
    source: &'static str,
    dim: usize,
    cfg: &SampleConfig,
    mut per_radius: Vec<RadiusReport>,
    directions: Vec<Vec<f64>>,
    mut warnings: Vec<String>,
) -> Result<InfinityReport> {
    let candidates = cfg.candidate_points()?;
    for r in &mut per_radius {
        cluster::match_candidates(&mut r.clusters, &candidates);
    }
    let counts: Vec<usize> = per_radius.iter().map(|r| r.component_count).collect();
    let stable_count = if counts.windows(2).all(|w| w[0] == w[1]) {
        Stability::Stable(counts[0])
    } else {
        Stability::Unstable
    };
    let last = per_radius.last().expect("radii nonempty");
    let possibly_empty = match source {
        "set" => (last.kept as f64) < 1e-4 * last.evaluated as f64,
        _ => last.kept == 0,
    };
    if possibly_empty {
        warnings.push(if source == "set" {
            "possibly empty at infinity: acceptance rate below 1e-4 at the largest radius".into()
        } else {
            "S_inf possibly empty (bounded image?): no escaping samples at the largest radius".into()
        });
    }
    let skipped: usize = per_radius.iter().map(|r| r.skipped).sum();
    if skipped > 0 {
        warnings.push(format!("{skipped} samples skipped: |f0| below 1e-30"));
    }
    Ok(InfinityReport {
        source,
        dim,
        per_radius,
        stable_count,
        possibly_empty,
        directions,
        warnings,
        config: cfg.clone(),
    })
}

fn radius_report(radius: f64, evaluated: usize, skipped: usize, dirs: &[Vec<f64>], eps: f64) -> RadiusReport {
    let clusters = component_count(dirs, eps);
    RadiusReport {
        radius,
        evaluated,
        kept: dirs.len(),
        skipped,
        component_count: clusters.len(),
        clusters,
    }
}

/// Samples the directions at infinity of `f(R^n)`.
pub fn sample_map_infinity(f: &RegularMap, cfg: &SampleConfig) -> Result<InfinityReport> {
    cfg.validate()?;
    let traced = map::traced_paths(f, cfg);
    let mut per_radius = Vec::new();
    let mut last = Vec::new();
    for &r in &cfg.radii {
        let (dirs, evaluated, skipped) = map::directions_at(&traced, r, cfg);
        per_radius.push(radius_report(r, evaluated, skipped, &dirs, cfg.eps));
        last = dirs;
    }
    assemble("map", f.m(), cfg, per_radius, last, Vec::new())
}

/// Samples the directions at infinity of a semialgebraic set.
pub fn sample_set_infinity(s: &SemialgebraicSet, cfg: &SampleConfig) -> Result<InfinityReport> {
    cfg.validate()?;
    let mut per_radius = Vec::new();
    let mut last = Vec::new();
    for (i, &r) in cfg.radii.iter().enumerate() {
        let (dirs, evaluated) = set::directions_at(s, i, r, cfg);
        per_radius.push(radius_report(r, evaluated, 0, &dirs, cfg.eps));
        last = dirs;
    }
    assemble("set", s.n, cfg, per_radius, last, Vec::new())
}

pub enum Subject<'a> {
    Map(&'a RegularMap),
    Set(&'a SemialgebraicSet),
}

pub const OBSTRUCTED: &str = "OBSTRUCTED: S_inf appears disconnected, so S is not the image of any \
non-constant polynomial map (polynomial images have connected sets at infinity)";
pub const NO_OBSTRUCTION: &str = "NO OBSTRUCTION FOUND";

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ObstructionVerdict {
    pub obstructed: bool,
    pub message: &'static str,
    pub stable_count: Stability,
    pub counts: Vec<usize>,
    pub radii: Vec<f64>,
    pub samples_per_radius: usize,
    pub eps: f64,
    /// Lower estimate of the gap between distinct clusters at the largest radius, in units
    /// of `eps`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub separation_over_eps: Option<f64>,
}

/// The connectivity test: a stable count of at least two components is an obstruction to
/// being a polynomial image. A single component never certifies anything.
pub fn polynomial_image_obstruction(
    subject: Subject<'_>,
    cfg: &SampleConfig,
) -> Result<(ObstructionVerdict, InfinityReport)> {
    let mut report = match subject {
        Subject::Map(f) => sample_map_infinity(f, cfg)?,
        Subject::Set(s) => sample_set_infinity(s, cfg)?,
    };
    let several = matches!(report.stable_count, Stability::Stable(k) if k >= 2);
    if several && cfg.radii.len() < 2 {
        report
            .warnings
            .push("a single radius cannot show stability; no obstruction is reported".into());
    }
    let obstructed = several && cfg.radii.len() >= 2;
    let clusters = report.clusters();
    let mut gap: Option<f64> = None;
    for (i, a) in clusters.iter().enumerate() {
        for b in &clusters[i + 1..] {
            let g = antipodal_distance(&a.centroid, &b.centroid) - a.extent - b.extent;
            gap = Some(gap.map_or(g, |x| x.min(g)));
        }
    }
    let verdict = ObstructionVerdict {
        obstructed,
        message: if obstructed { OBSTRUCTED } else { NO_OBSTRUCTION },
        stable_count: report.stable_count,
        counts: report.counts(),
        radii: cfg.radii.clone(),
        samples_per_radius: cfg.n_samples,
        eps: cfg.eps,
        separation_over_eps: gap.map(|g| g / cfg.eps),
    };
    Ok((verdict, report))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::{parse_map, parse_set};

    #[test]
    fn single_radius_never_obstructs() {
        let s = parse_set("set R^2 : y = 0 or x = 0").unwrap();
        let cfg = SampleConfig {
            radii: vec![1e4],
            n_samples: 2000,
            ..SampleConfig::default()
        };
        let (v, r) = polynomial_image_obstruction(Subject::Set(&s), &cfg).unwrap();
        assert_eq!(r.stable_count, Stability::Stable(2));
        assert!(!v.obstructed);
        assert_eq!(r.warnings.len(), 1);
    }

    #[test]
    fn config_validation() {
        assert!(SampleConfig::default().validate().is_ok());
        let c = SampleConfig {
            radii: vec![1e6, 1e4],
            ..SampleConfig::default()
        };
        assert!(c.validate().is_err());
        assert!(SampleConfig::from_json(r#"{"eps": 2.0}"#).is_err());
        assert!(SampleConfig::from_json(r#"{"n_samples": 10}"#).is_err());
        let c = SampleConfig::from_json(r#"{"seed": 7}"#).unwrap();
        assert_eq!(c.seed, 7);
        assert_eq!(c.radii, vec![1e4, 1e6, 1e8]);
    }

    #[test]
    fn constant_map_is_possibly_empty() {
        let f = parse_map("(3, -1)").unwrap();
        let r = sample_map_infinity(&f, &SampleConfig::default()).unwrap();
        assert!(r.possibly_empty);
        assert_eq!(r.stable_count, Stability::Stable(0));
    }

    #[test]
    fn half_plane() {
        let s = parse_set("x >= 0").unwrap();
        let r = sample_set_infinity(&s, &SampleConfig::default()).unwrap();
        assert_eq!(r.stable_count, Stability::Stable(1));
    }

    #[test]
    fn two_points_map() {
        let f = parse_map("((x*y - 1)^2 + x^2, 1/((x*y - 1)^2 + x^2))").unwrap();
        let cfg = SampleConfig {
            candidates: vec!["0:1:0".into(), "0:0:1".into()],
            ..SampleConfig::default()
        };
        let r = sample_map_infinity(&f, &cfg).unwrap();
        assert_eq!(r.stable_count, Stability::Stable(2), "{:?}", r.counts());
        for c in r.clusters() {
            assert!(c.nearest.as_ref().unwrap().distance < 0.05);
        }
    }
}
