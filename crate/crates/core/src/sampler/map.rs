//! Escaping samples of a regular map along exact Laurent paths.
//!
//! Each path `x_i(t) = c_i t^{k_i}` (optionally with a second term at `t^{k_i + 1}`) is
//! composed with the components of `f` in exact arithmetic, so cancellations between
//! leading terms are exact. Only the grouped coefficients are rounded to floats, and every
//! component is evaluated as `t^nu * sum_e C_e t^{e - nu}` with a common `nu`, which keeps the
//! float evaluation free of overflow.

use std::f64::consts::PI;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use super::cluster::unit_direction;
use super::{batch_rng, SampleConfig};
use crate::parser::RegularMap;
use crate::polyring::rational::rat_to_f64;
use crate::polyring::{compose_path, ratio, LaurentPoly, Rat};
use crate::projective::antipodal_distance;

pub(crate) const POINTS_PER_PATH: usize = 8;
const GRID: usize = 48;
const RHO_LEVELS: [f64; 2] = [1.0, 6.0];
const MAX_ROUNDS: usize = 10;
const F0_FLOOR: f64 = 1e-30;

fn pool() -> Vec<Rat> {
    [(1, 1), (-1, 1), (2, 1), (-2, 1), (1, 2), (-1, 2)]
        .iter()
        .map(|&(a, b)| ratio(a, b))
        .collect()
}

/// Coefficient with 12 fractional bits, never zero.
fn quantize(c: f64) -> Rat {
    let q = (c * 4096.0).round() as i64;
    ratio(if q == 0 { 1 } else { q }, 4096)
}

#[derive(Clone, Debug)]
pub(crate) struct PathSpec {
    exps: Vec<i64>,
    coeffs: Vec<Rat>,
    perturb: Option<Vec<Rat>>,
    family: Option<usize>,
    phi: f64,
}

impl PathSpec {
    fn laurent(&self) -> Vec<LaurentPoly> {
        (0..self.exps.len())
            .map(|i| {
                let mut terms = vec![(self.exps[i], self.coeffs[i].clone())];
                if let Some(p) = &self.perturb {
                    terms.push((self.exps[i] + 1, p[i].clone()));
                }
                LaurentPoly::from_terms(terms)
            })
            .collect()
    }
}

/// Primitive exponent vectors with entries in `[-3, 3]` and at least one negative entry.
fn signatures_2d() -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    for a in -3i64..=3 {
        for b in -3i64..=3 {
            if (a >= 0 && b >= 0) || num_integer::gcd(a, b) != 1 {
                continue;
            }
            out.push(vec![a, b]);
        }
    }
    out
}

struct Family {
    exps: Vec<i64>,
    rho: f64,
}

impl Family {
    fn at(&self, index: usize, phi: f64) -> PathSpec {
        PathSpec {
            exps: self.exps.clone(),
            coeffs: vec![quantize(self.rho * phi.cos()), quantize(self.rho * phi.sin())],
            perturb: None,
            family: Some(index),
            phi,
        }
    }
}

fn families_2d() -> Vec<Family> {
    let mut out = Vec::new();
    for exps in signatures_2d() {
        let rays = exps == [-1, -1];
        for &rho in RHO_LEVELS.iter().take(if rays { 1 } else { RHO_LEVELS.len() }) {
            out.push(Family {
                exps: exps.clone(),
                rho,
            });
        }
    }
    out
}

fn simplicity(p: &PathSpec) -> (bool, i64, u64) {
    let height = |c: &Rat| {
        let (n, d) = (c.numer().magnitude(), c.denom().magnitude());
        n.max(d).to_u64_digits().first().copied().unwrap_or(0)
    };
    (
        p.perturb.is_some(),
        p.exps.iter().map(|k| k.abs()).sum(),
        p.coeffs.iter().map(height).sum(),
    )
}

fn pool_paths(sigs: &[Vec<i64>], rng: &mut ChaCha8Rng) -> Vec<PathSpec> {
    let pool = pool();
    let mut out = Vec::new();
    for exps in sigs {
        let n = exps.len();
        let mut idx = vec![0usize; n];
        loop {
            let coeffs: Vec<Rat> = idx.iter().map(|&i| pool[i].clone()).collect();
            let perturb = if rng.gen_bool(0.25) {
                Some((0..n).map(|_| pool.choose(rng).unwrap().clone()).collect())
            } else {
                None
            };
            out.push(PathSpec {
                exps: exps.clone(),
                coeffs: coeffs.clone(),
                perturb: None,
                family: None,
                phi: 0.0,
            });
            if perturb.is_some() {
                out.push(PathSpec {
                    exps: exps.clone(),
                    coeffs,
                    perturb,
                    family: None,
                    phi: 0.0,
                });
            }
            let mut k = 0;
            while k < n {
                idx[k] += 1;
                if idx[k] < pool.len() {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
            if k == n {
                break;
            }
        }
    }
    out
}

fn random_signature(n: usize, rng: &mut ChaCha8Rng) -> Vec<i64> {
    loop {
        let e: Vec<i64> = (0..n).map(|_| rng.gen_range(-2..=2)).collect();
        if e.iter().any(|&k| k < 0) {
            return e;
        }
    }
}

fn gaussian_coeffs(n: usize, rho: f64, rng: &mut ChaCha8Rng) -> Vec<Rat> {
    let v: Vec<f64> = (0..n).map(|_| rng.sample(StandardNormal)).collect();
    let norm = v.iter().map(|a| a * a).sum::<f64>().sqrt().max(1e-12);
    v.iter().map(|a| quantize(rho * a / norm)).collect()
}

/// Initial set of paths and the families that can be refined by bisection.
fn initial_paths(n: usize, target: usize, cfg: &SampleConfig) -> (Vec<PathSpec>, Vec<Family>) {
    let mut rng = batch_rng(cfg.seed, 0);
    match n {
        1 => {
            let mut paths = pool_paths(&[vec![-1]], &mut rng);
            for _ in 0..target.saturating_sub(paths.len()).min(64) {
                let c = if rng.gen_bool(0.5) { 1.0 } else { -1.0 } * rng.gen_range(0.1..10.0);
                paths.push(PathSpec {
                    exps: vec![-1],
                    coeffs: vec![quantize(c)],
                    perturb: None,
                    family: None,
                    phi: 0.0,
                });
            }
            (paths, Vec::new())
        }
        2 => {
            let families = families_2d();
            let mut paths = pool_paths(&signatures_2d(), &mut rng);
            if paths.len() > target / 2 {
                // keep the simplest paths: special escape sets tend to sit on them
                paths.sort_by_key(simplicity);
                paths.truncate(target / 2);
            }
            let per = (target / 4 / families.len()).max(8);
            for (fi, fam) in families.iter().enumerate() {
                for j in 0..per {
                    let phi = 2.0 * PI * (j as f64 + rng.gen_range(0.0..1.0)) / per as f64;
                    paths.push(fam.at(fi, phi));
                }
            }
            (paths, families)
        }
        _ => {
            let mut paths = Vec::new();
            let rays = vec![-1; n];
            for _ in 0..target / 2 {
                paths.push(PathSpec {
                    exps: rays.clone(),
                    coeffs: gaussian_coeffs(n, 1.0, &mut rng),
                    perturb: None,
                    family: None,
                    phi: 0.0,
                });
            }
            let pool = pool();
            for i in 0..target / 2 {
                let exps = if i % 3 == 0 {
                    rays.clone()
                } else {
                    random_signature(n, &mut rng)
                };
                let coeffs = if i % 2 == 0 {
                    (0..n).map(|_| pool.choose(&mut rng).unwrap().clone()).collect()
                } else {
                    let rho = RHO_LEVELS[rng.gen_range(0..RHO_LEVELS.len())];
                    gaussian_coeffs(n, rho, &mut rng)
                };
                let perturb = if i % 4 == 1 {
                    Some((0..n).map(|_| pool.choose(&mut rng).unwrap().clone()).collect())
                } else {
                    None
                };
                paths.push(PathSpec {
                    exps,
                    coeffs,
                    perturb,
                    family: None,
                    phi: 0.0,
                });
            }
            (paths, Vec::new())
        }
    }
}

/// `f` composed with one path, with the common order `nu` factored out.
#[derive(Clone, Debug)]
pub(crate) struct Traced {
    pub(crate) spec: PathSpec,
    /// `(e - nu, C_e)` for `f0, f1, ..., fm`.
    comps: Vec<Vec<(i32, f64)>>,
    nu: i64,
    path: Vec<Vec<(i32, f64)>>,
    /// Limit direction of `f` along the path when the path escapes.
    pub(crate) limit: Option<Vec<f64>>,
}

fn trace(f: &RegularMap, spec: PathSpec) -> Option<Traced> {
    let alpha = spec.laurent();
    let comps: Vec<LaurentPoly> = f
        .components()
        .iter()
        .map(|p| compose_path(p, &alpha))
        .collect::<crate::Result<_>>()
        .ok()?;
    if comps[0].is_zero() {
        return None;
    }
    let nu = comps.iter().filter_map(LaurentPoly::ord).min()?;
    let ord0 = comps[0].ord()?;
    let top = comps[1..].iter().filter_map(LaurentPoly::ord).min();
    let limit = match top {
        Some(k) if k < ord0 => {
            let lead: Vec<f64> = comps[1..].iter().map(|c| rat_to_f64(&c.coeff(k))).collect();
            unit_direction(&lead)
        }
        _ => None,
    };
    let to_f = |c: &LaurentPoly, shift: i64| -> Vec<(i32, f64)> {
        c.terms()
            .map(|(e, v)| ((e - shift) as i32, rat_to_f64(v)))
            .collect()
    };
    Some(Traced {
        comps: comps.iter().map(|c| to_f(c, nu)).collect(),
        nu,
        path: alpha.iter().map(|c| to_f(c, 0)).collect(),
        limit,
        spec,
    })
}

fn eval_terms(terms: &[(i32, f64)], t: f64) -> f64 {
    terms.iter().map(|(e, c)| c * t.powi(*e)).sum()
}

struct Point {
    log_norm: f64,
    direction: Option<Vec<f64>>,
    f0_tiny: bool,
}

impl Traced {
    fn domain_norm(&self, t: f64) -> f64 {
        self.path
            .iter()
            .map(|c| eval_terms(c, t).powi(2))
            .sum::<f64>()
            .sqrt()
    }

    fn at(&self, t: f64) -> Point {
        let g0 = eval_terms(&self.comps[0], t);
        let gs: Vec<f64> = self.comps[1..].iter().map(|c| eval_terms(c, t)).collect();
        let num = gs.iter().map(|v| v * v).sum::<f64>().sqrt();
        let log_f0 = g0.abs().ln() + self.nu as f64 * t.ln();
        Point {
            log_norm: num.ln() - g0.abs().ln(),
            direction: unit_direction(&gs),
            f0_tiny: g0 == 0.0 || log_f0 < F0_FLOOR.ln(),
        }
    }

    /// Smallest `t` in `(0, 1]` keeping the domain point inside the norm cap.
    fn t_min(&self, cap: f64) -> Option<f64> {
        if self.domain_norm(1.0) > cap {
            return None;
        }
        let mut hi = 1.0f64;
        let mut lo = 0.1f64;
        let mut steps = 0;
        while self.domain_norm(lo) <= cap {
            hi = lo;
            lo *= 0.1;
            steps += 1;
            if steps > 300 {
                return None;
            }
        }
        let (mut a, mut b) = (lo.ln(), hi.ln());
        for _ in 0..60 {
            let mid = 0.5 * (a + b);
            if self.domain_norm(mid.exp()) <= cap {
                b = mid;
            } else {
                a = mid;
            }
        }
        Some(b.exp())
    }

    /// Samples with `|f| > radius`, plus the number of samples dropped by the `f0` guard.
    pub(crate) fn samples(&self, radius: f64, cap: f64) -> (Vec<Vec<f64>>, usize) {
        let Some(t_min) = self.t_min(cap) else {
            return (Vec::new(), 0);
        };
        let log_r = radius.ln();
        let grid = log_space(1.0, t_min, GRID);
        let below = grid.iter().rposition(|&t| self.at(t).log_norm <= log_r);
        let t_r = match below {
            None => 1.0,
            Some(i) if i + 1 < grid.len() => grid[i + 1],
            Some(_) => return (Vec::new(), 0),
        };
        let mut out = Vec::new();
        let mut skipped = 0;
        for t in log_space(t_r, t_min, POINTS_PER_PATH) {
            let p = self.at(t);
            if p.f0_tiny {
                skipped += 1;
                continue;
            }
            if p.log_norm > log_r {
                if let Some(d) = p.direction {
                    out.push(d);
                }
            }
        }
        (out, skipped)
    }
}

fn log_space(from: f64, to: f64, k: usize) -> Vec<f64> {
    if k == 1 || from == to {
        return vec![to];
    }
    let (a, b) = (from.ln(), to.ln());
    (0..k)
        .map(|i| (a + (b - a) * i as f64 / (k - 1) as f64).exp())
        .collect()
}

/// Paths to sample, after adaptive bisection of the one-parameter families in the plane.
pub(crate) fn traced_paths(f: &RegularMap, cfg: &SampleConfig) -> Vec<Traced> {
    let target = (cfg.n_samples / POINTS_PER_PATH).max(64);
    let (specs, families) = initial_paths(f.n(), target, cfg);
    let mut traced: Vec<Traced> = specs
        .into_par_iter()
        .filter_map(|s| trace(f, s))
        .collect();
    let mut budget = target.saturating_sub(traced.len());
    for _ in 0..MAX_ROUNDS {
        if budget == 0 || families.is_empty() {
            break;
        }
        let mut new_specs = Vec::new();
        for (fi, fam) in families.iter().enumerate() {
            let mut members: Vec<&Traced> = traced
                .iter()
                .filter(|t| t.spec.family == Some(fi))
                .collect();
            members.sort_by(|a, b| a.spec.phi.total_cmp(&b.spec.phi));
            let k = members.len();
            for i in 0..k {
                let a = members[i];
                let b = members[(i + 1) % k];
                let gap = (b.spec.phi - a.spec.phi).rem_euclid(2.0 * PI);
                if gap < 1e-4 {
                    continue;
                }
                let split = match (&a.limit, &b.limit) {
                    (Some(u), Some(v)) => antipodal_distance(u, v) > cfg.eps / 2.0,
                    (None, None) => false,
                    _ => true,
                };
                if split {
                    new_specs.push(fam.at(fi, (a.spec.phi + gap / 2.0).rem_euclid(2.0 * PI)));
                }
            }
        }
        if new_specs.is_empty() {
            break;
        }
        new_specs.truncate(budget);
        budget -= new_specs.len();
        let more: Vec<Traced> = new_specs
            .into_par_iter()
            .filter_map(|s| trace(f, s))
            .collect();
        traced.extend(more);
    }
    traced
}

/// Directions of escaping samples at `radius`, in path order.
pub(crate) fn directions_at(traced: &[Traced], radius: f64, cfg: &SampleConfig) -> (Vec<Vec<f64>>, usize, usize) {
    let per_path: Vec<(Vec<Vec<f64>>, usize)> = traced
        .par_iter()
        .map(|t| t.samples(radius, cfg.max_domain_norm))
        .collect();
    let evaluated = traced.len() * POINTS_PER_PATH;
    let skipped = per_path.iter().map(|p| p.1).sum();
    let dirs = per_path.into_iter().flat_map(|p| p.0).collect();
    (dirs, evaluated, skipped)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_map;

    #[test]
    fn signatures() {
        let s = signatures_2d();
        assert!(s.contains(&vec![-1, -1]));
        assert!(s.contains(&vec![1, -1]));
        assert!(s.contains(&vec![-2, -3]));
        assert!(!s.contains(&vec![-2, -2]));
    }

    #[test]
    fn exact_cancellation_along_hyperbola() {
        let f = parse_map("((x*y - 1)^2 + x^2, 1/((x*y - 1)^2 + x^2))").unwrap();
        let spec = PathSpec {
            exps: vec![1, -1],
            coeffs: vec![ratio(1, 1), ratio(1, 1)],
            perturb: None,
            family: None,
            phi: 0.0,
        };
        let tr = trace(&f, spec).unwrap();
        let lim = tr.limit.clone().unwrap();
        assert!(antipodal_distance(&lim, &[0.0, 1.0]) < 1e-12);
        let (d, _, ) = tr.samples(1e8, 1e8);
        assert!(!d.is_empty());
    }
}
