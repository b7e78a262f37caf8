//! The bundled example corpus and its runner.

use serde::{Deserialize, Serialize};

use crate::bridge::Check;
use crate::classifier::classify;
use crate::error::{Error, Result};
use crate::parser::{parse_map, parse_path, parse_set};
use crate::projective::{antipodal_distance, path_limit, ProjPoint};
use crate::sampler::{
    polynomial_image_obstruction, Cluster, InfinityReport, SampleConfig, Stability, Subject,
};

const INDEX: &str = include_str!("../../corpus/index.json");

const FILES: &[(&str, &str)] = &[
    ("hyperbola_branch.map", include_str!("../../corpus/hyperbola_branch.map")),
    ("quarter_region.map", include_str!("../../corpus/quarter_region.map")),
    ("low_denominator.map", include_str!("../../corpus/low_denominator.map")),
    ("three_lines.map", include_str!("../../corpus/three_lines.map")),
    ("two_arcs.map", include_str!("../../corpus/two_arcs.map")),
    ("parabola_sum.map", include_str!("../../corpus/parabola_sum.map")),
    ("hyperbola_curve.map", include_str!("../../corpus/hyperbola_curve.map")),
    ("cubic_over_quadric.map", include_str!("../../corpus/cubic_over_quadric.map")),
    ("cubic_composite.map", include_str!("../../corpus/cubic_composite.map")),
    ("strip_wedge.set", include_str!("../../corpus/strip_wedge.set")),
    ("half_hyperbola.set", include_str!("../../corpus/half_hyperbola.set")),
    ("hyperbola_branch.set", include_str!("../../corpus/hyperbola_branch.set")),
];

/// Largest sphere distance allowed between a sampled cluster and an expected arc.
pub const ARC_TOLERANCE: f64 = 0.06;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpectedVerdict {
    pub status: String,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpectedLimit {
    pub path: String,
    pub point: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExampleCase {
    pub id: String,
    pub file: String,
    pub citation: String,
    #[serde(default)]
    pub verdict: Option<ExpectedVerdict>,
    #[serde(default)]
    pub limits: Vec<ExpectedLimit>,
    /// Points expected in the set at infinity.
    #[serde(default)]
    pub points: Vec<String>,
    /// Arcs of the set at infinity, as pairs of end points.
    #[serde(default)]
    pub arcs: Vec<(String, String)>,
    pub components: usize,
    #[serde(default)]
    pub obstructed: Option<bool>,
    /// Sampling radii for maps that grow too slowly for the default ones.
    #[serde(default)]
    pub radii: Option<Vec<f64>>,
}

impl ExampleCase {
    pub fn is_set(&self) -> bool {
        self.file.ends_with(".set")
    }

    pub fn source(&self) -> &'static str {
        file_text(&self.file).expect("corpus file is bundled")
    }
}

pub fn file_text(name: &str) -> Option<&'static str> {
    FILES.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}

pub fn cases() -> Vec<ExampleCase> {
    serde_json::from_str(INDEX).expect("corpus index is valid")
}

pub fn find(id: &str) -> Option<ExampleCase> {
    cases().into_iter().find(|c| c.id == id)
}

/// Hausdorff distance, in the antipodal metric, between `points` and the arc of directions
/// from `a` to `b`.
pub fn hausdorff_to_arc(points: &[&[f64]], a: &[f64], b: &[f64]) -> f64 {
    let dot: f64 = a.iter().zip(b).map(|(x, y)| x * y).sum();
    let b: Vec<f64> = if dot < 0.0 { b.iter().map(|v| -v).collect() } else { b.to_vec() };
    let arc: Vec<Vec<f64>> = (0..=400)
        .map(|k| {
            let s = k as f64 / 400.0;
            let v: Vec<f64> = a.iter().zip(&b).map(|(x, y)| (1.0 - s) * x + s * y).collect();
            let n = v.iter().map(|c| c * c).sum::<f64>().sqrt();
            v.iter().map(|c| c / n).collect()
        })
        .collect();
    let near = |p: &[f64], set: &mut dyn Iterator<Item = &[f64]>| {
        set.map(|q| antipodal_distance(p, q)).fold(f64::INFINITY, f64::min)
    };
    let d1 = points
        .iter()
        .map(|p| near(p, &mut arc.iter().map(Vec::as_slice)))
        .fold(0.0, f64::max);
    let d2 = arc
        .iter()
        .map(|q| near(q, &mut points.iter().copied()))
        .fold(0.0, f64::max);
    d1.max(d2)
}

/// The cluster closest to the middle of an arc, with its Hausdorff distance to the arc.
pub fn arc_match(report: &InfinityReport, a: &ProjPoint, b: &ProjPoint) -> Option<(usize, f64)> {
    let (da, db) = (a.direction(), b.direction());
    let dot: f64 = da.iter().zip(&db).map(|(x, y)| x * y).sum();
    let sign = if dot < 0.0 { -1.0 } else { 1.0 };
    let mid: Vec<f64> = da.iter().zip(&db).map(|(x, y)| x + sign * y).collect();
    let clusters: &[Cluster] = report.clusters();
    let (k, c) = clusters
        .iter()
        .enumerate()
        .min_by(|x, y| {
            antipodal_distance(&x.1.centroid, &mid).total_cmp(&antipodal_distance(&y.1.centroid, &mid))
        })?;
    let pts: Vec<&[f64]> = c.members.iter().map(|&i| report.directions[i].as_slice()).collect();
    Some((k, hausdorff_to_arc(&pts, &da, &db)))
}

#[derive(Clone, Debug, PartialEq)]
pub struct CaseOutcome {
    pub case: ExampleCase,
    pub checks: Vec<Check>,
}

impl CaseOutcome {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

fn point(s: &str) -> Result<ProjPoint> {
    ProjPoint::parse(s).ok_or_else(|| Error::precondition("corpus point", format!("cannot parse `{s}`")))
}

/// Runs every check declared for `case`. With `sample` false the sampler is skipped.
pub fn run_case(case: &ExampleCase, cfg: &SampleConfig, sample: bool) -> Result<CaseOutcome> {
    let mut checks = Vec::new();
    let subject_map;
    let subject_set;
    let subject = if case.is_set() {
        subject_set = parse_set(case.source())?;
        Subject::Set(&subject_set)
    } else {
        subject_map = parse_map(case.source())?;
        if let Some(v) = &case.verdict {
            let got = classify(&subject_map)?;
            let (status, reason) = (got.status.to_string(), got.reason.name().to_string());
            checks.push(Check::new(
                "verdict",
                status == v.status && reason == v.reason,
                format!("{status} / {reason}"),
            ));
        }
        for l in &case.limits {
            let path = parse_path(&l.path)?;
            let want = point(&l.point)?;
            let got = path_limit(&subject_map, &path)?;
            checks.push(Check::new(
                format!("limit along {}", l.path),
                got.point == want,
                got.point.to_string(),
            ));
        }
        Subject::Map(&subject_map)
    };
    if sample {
        let mut cfg = cfg.clone();
        cfg.candidates = case.points.clone();
        if let Some(r) = &case.radii {
            cfg.radii = r.clone();
        }
        let (verdict, report) = polynomial_image_obstruction(subject, &cfg)?;
        checks.push(Check::new(
            "components",
            report.stable_count == Stability::Stable(case.components),
            format!("{:?}", report.counts()),
        ));
        for p in &case.points {
            let want = point(p)?;
            let best = report
                .clusters()
                .iter()
                .map(|c| antipodal_distance(&c.centroid, &want.direction()))
                .fold(f64::INFINITY, f64::min);
            checks.push(Check::new(
                format!("cluster near {want}"),
                best < cfg.eps,
                format!("{best:.2e}"),
            ));
        }
        for (a, b) in &case.arcs {
            let (pa, pb) = (point(a)?, point(b)?);
            let m = arc_match(&report, &pa, &pb);
            checks.push(Check::new(
                format!("arc {pa} -- {pb}"),
                m.is_some_and(|(_, d)| d <= ARC_TOLERANCE),
                m.map_or("no cluster".into(), |(k, d)| format!("cluster {} at {d:.3}", k + 1)),
            ));
        }
        if let Some(o) = case.obstructed {
            checks.push(Check::new("obstruction", verdict.obstructed == o, verdict.message));
        }
    }
    Ok(CaseOutcome {
        case: case.clone(),
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_matches_files() {
        let cs = cases();
        assert_eq!(cs.len(), FILES.len());
        for c in &cs {
            assert!(file_text(&c.file).is_some(), "{}", c.file);
            assert!(!c.citation.is_empty());
            if c.is_set() {
                parse_set(c.source()).unwrap();
            } else {
                parse_map(c.source()).unwrap();
            }
        }
    }

    #[test]
    fn exact_checks_pass() {
        for c in cases() {
            let out = run_case(&c, &SampleConfig::default(), false).unwrap();
            assert!(out.passed(), "{}: {:?}", c.id, out.checks);
        }
    }
}
