use std::collections::HashMap;

use petgraph::unionfind::UnionFind;
use serde::Serialize;

use crate::projective::{antipodal_distance, ProjPoint};

/// Flips `u` so that its first nonzero coordinate is positive.
pub fn canonical(mut u: Vec<f64>) -> Vec<f64> {
    if let Some(first) = u.iter().find(|v| **v != 0.0) {
        if *first < 0.0 {
            u.iter_mut().for_each(|v| *v = -*v);
        }
    }
    u
}

/// Normalizes `v` to a canonical unit vector, or `None` for the zero vector or non-finite input.
pub fn unit_direction(v: &[f64]) -> Option<Vec<f64>> {
    let norm = v.iter().map(|a| a * a).sum::<f64>().sqrt();
    if norm == 0.0 || !norm.is_finite() {
        return None;
    }
    Some(canonical(v.iter().map(|a| a / norm).collect()))
}

/// Connected components of the graph joining directions at antipodal distance `< eps`.
///
/// Returns a component label per direction; labels are numbered by first occurrence.
pub fn component_labels(directions: &[Vec<f64>], eps: f64) -> Vec<usize> {
    let n = directions.len();
    let mut uf = UnionFind::<usize>::new(n);
    let Some(dim) = directions.first().map(Vec::len) else {
        return Vec::new();
    };
    if dim <= 6 {
        let cell = |u: &[f64]| -> Vec<i64> { u.iter().map(|a| (a / eps).floor() as i64).collect() };
        let mut grid: HashMap<Vec<i64>, Vec<usize>> = HashMap::new();
        let offsets = neighbour_offsets(dim);
        for (i, u) in directions.iter().enumerate() {
            let neg: Vec<f64> = u.iter().map(|a| -a).collect();
            for v in [u.as_slice(), neg.as_slice()] {
                let base = cell(v);
                for off in &offsets {
                    let key: Vec<i64> = base.iter().zip(off).map(|(b, o)| b + o).collect();
                    if let Some(bucket) = grid.get(&key) {
                        for &j in bucket {
                            if antipodal_distance(u, &directions[j]) < eps {
                                uf.union(i, j);
                            }
                        }
                    }
                }
            }
            grid.entry(cell(u)).or_default().push(i);
        }
    } else {
        for i in 0..n {
            for j in 0..i {
                if antipodal_distance(&directions[i], &directions[j]) < eps {
                    uf.union(i, j);
                }
            }
        }
    }
    let mut relabel: HashMap<usize, usize> = HashMap::new();
    (0..n)
        .map(|i| {
            let root = uf.find(i);
            let next = relabel.len();
            *relabel.entry(root).or_insert(next)
        })
        .collect()
}

fn neighbour_offsets(dim: usize) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..dim {
        out = out
            .into_iter()
            .flat_map(|v| {
                (-1..=1).map(move |o| {
                    let mut w = v.clone();
                    w.push(o);
                    w
                })
            })
            .collect();
    }
    out
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CandidateMatch {
    pub point: String,
    pub distance: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Cluster {
    pub size: usize,
    pub centroid: Vec<f64>,
    /// Largest antipodal distance from the centroid to a member.
    pub extent: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nearest: Option<CandidateMatch>,
    #[serde(skip)]
    pub members: Vec<usize>,
}

/// Groups directions into clusters; the order follows first occurrence in `directions`.
pub fn component_count(directions: &[Vec<f64>], eps: f64) -> Vec<Cluster> {
    let labels = component_labels(directions, eps);
    let count = labels.iter().copied().max().map_or(0, |l| l + 1);
    let mut members = vec![Vec::new(); count];
    for (i, l) in labels.iter().enumerate() {
        members[*l].push(i);
    }
    members
        .into_iter()
        .map(|m| summarize(directions, m))
        .collect()
}

fn summarize(directions: &[Vec<f64>], members: Vec<usize>) -> Cluster {
    let first = &directions[members[0]];
    let mut sum = vec![0.0; first.len()];
    for &i in &members {
        let u = &directions[i];
        let dot: f64 = u.iter().zip(first).map(|(a, b)| a * b).sum();
        let s = if dot < 0.0 { -1.0 } else { 1.0 };
        sum.iter_mut().zip(u).for_each(|(acc, a)| *acc += s * a);
    }
    let centroid = unit_direction(&sum).unwrap_or_else(|| first.clone());
    let extent = members
        .iter()
        .map(|&i| antipodal_distance(&directions[i], &centroid))
        .fold(0.0, f64::max);
    Cluster {
        size: members.len(),
        centroid,
        extent,
        nearest: None,
        members,
    }
}

/// Attaches the nearest candidate point at infinity to each cluster.
pub fn match_candidates(clusters: &mut [Cluster], candidates: &[ProjPoint]) {
    for c in clusters {
        c.nearest = candidates
            .iter()
            .filter(|p| p.at_infinity() && p.dim() == c.centroid.len())
            .map(|p| CandidateMatch {
                point: p.to_string(),
                distance: antipodal_distance(&p.direction(), &c.centroid),
            })
            .min_by(|a, b| a.distance.total_cmp(&b.distance));
    }
}
