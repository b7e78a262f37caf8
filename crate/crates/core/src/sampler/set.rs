//! Points of a semialgebraic set in the annulus `R <= |x| <= 2R`.
//!
//! Three kinds of candidates are drawn in turn: uniform points of the annulus, points on
//! lines where some coordinates take small lattice values (thin strips and half-lines),
//! and points moved onto the boundary `{a = 0}` of an atom. The last kind solves for one
//! coordinate exactly when the atom is linear in it, so equalities and non-strict
//! inequalities hold exactly. Membership is decided by exact rational evaluation.

use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;

use super::cluster::unit_direction;
use super::{batch_rng, SampleConfig};
use crate::parser::{Atom, Formula, Relation, SemialgebraicSet};
use crate::polyring::rational::{rat_from_f64, rat_to_f64};
use crate::polyring::{ratio, MPoly, Rat};

const BATCH: usize = 256;
const NEWTON_STEPS: usize = 40;
/// Relative residual accepted for an equality that could only be reached by Newton steps.
const NEWTON_TOL: f64 = 1e-9;

fn lattice() -> Vec<Rat> {
    [(-2, 1), (-1, 1), (-1, 2), (0, 1), (1, 2), (1, 1), (2, 1)]
        .iter()
        .map(|&(a, b)| ratio(a, b))
        .collect()
}

fn annulus_point(n: usize, radius: f64, rng: &mut ChaCha8Rng) -> Vec<f64> {
    let v: Vec<f64> = (0..n).map(|_| rng.sample(StandardNormal)).collect();
    let norm = v.iter().map(|a| a * a).sum::<f64>().sqrt().max(1e-300);
    let r = rng.gen_range(radius * radius..4.0 * radius * radius).sqrt();
    v.iter().map(|a| a * r / norm).collect()
}

fn to_rats(x: &[f64]) -> Vec<Rat> {
    x.iter().map(|v| rat_from_f64(*v)).collect()
}

fn lattice_point(n: usize, radius: f64, rng: &mut ChaCha8Rng) -> Vec<Rat> {
    let mut x = to_rats(&annulus_point(n, radius, rng));
    if n < 2 {
        return x;
    }
    let lat = lattice();
    let k = rng.gen_range(1..n);
    let mut idx: Vec<usize> = (0..n).collect();
    idx.shuffle(rng);
    for &i in &idx[..k] {
        x[i] = lat.choose(rng).unwrap().clone();
    }
    // keep the point in the annulus by rescaling the free coordinates
    let fixed: f64 = idx[..k].iter().map(|&i| rat_to_f64(&x[i]).powi(2)).sum();
    let free: f64 = idx[k..].iter().map(|&i| rat_to_f64(&x[i]).powi(2)).sum();
    let want = rng.gen_range(radius * radius..4.0 * radius * radius) - fixed;
    if free > 0.0 && want > 0.0 {
        let s = (want / free).sqrt();
        for &i in &idx[k..] {
            x[i] = rat_from_f64(rat_to_f64(&x[i]) * s);
        }
    }
    x
}

/// The value `a` should take on the boundary sample: 0, or a small offset for strict atoms.
fn boundary_target(rel: Relation) -> Rat {
    match rel {
        Relation::Lt => ratio(-1, 1024),
        Relation::Gt => ratio(1, 1024),
        _ => Rat::zero(),
    }
}

/// Solves `a(x) = target` for one coordinate in which `a` is linear; `None` if there is none.
fn solve_linear(a: &MPoly, target: &Rat, x: &[Rat], rng: &mut ChaCha8Rng) -> Option<Vec<Rat>> {
    let mut vars: Vec<usize> = (0..x.len())
        .filter(|&j| a.degree_in(j).finite() == Some(1))
        .collect();
    vars.shuffle(rng);
    for j in vars {
        let c = a.coeffs_in(j);
        let mut pt = x.to_vec();
        pt[j] = Rat::zero();
        let lin = c[1].eval(&pt);
        if lin.is_zero() {
            continue;
        }
        let rest = c[0].eval(&pt);
        pt[j] = (target - rest) / lin;
        return Some(pt);
    }
    None
}

fn newton(a: &MPoly, x: &[Rat]) -> Option<Vec<Rat>> {
    let grads: Vec<MPoly> = (0..x.len()).map(|j| a.derivative(j)).collect();
    let mut p: Vec<f64> = x.iter().map(rat_to_f64).collect();
    for _ in 0..NEWTON_STEPS {
        let v = a.eval_f64(&p);
        let g: Vec<f64> = grads.iter().map(|d| d.eval_f64(&p)).collect();
        let g2: f64 = g.iter().map(|c| c * c).sum();
        if g2 == 0.0 || !g2.is_finite() {
            return None;
        }
        p.iter_mut().zip(&g).for_each(|(c, d)| *c -= v * d / g2);
    }
    p.iter().all(|c| c.is_finite()).then(|| to_rats(&p))
}

fn near_zero(a: &MPoly, x: &[Rat]) -> bool {
    let p: Vec<f64> = x.iter().map(rat_to_f64).collect();
    let g: f64 = (0..x.len())
        .map(|j| a.derivative(j).eval_f64(&p).powi(2))
        .sum::<f64>()
        .sqrt();
    let norm: f64 = p.iter().map(|c| c * c).sum::<f64>().sqrt();
    a.eval_f64(&p).abs() <= NEWTON_TOL * (1.0 + g * norm)
}

/// Exact evaluation, except that `relaxed` equalities may hold up to the Newton tolerance.
fn holds(f: &Formula, x: &[Rat], relaxed: Option<&Atom>) -> bool {
    match f {
        Formula::Atom(a) => {
            if a.rel.holds(&a.poly.eval(x)) {
                return true;
            }
            matches!(relaxed, Some(r) if r == a && a.rel == Relation::Eq) && near_zero(&a.poly, x)
        }
        Formula::And(cs) => cs.iter().all(|c| holds(c, x, relaxed)),
        Formula::Or(cs) => cs.iter().any(|c| holds(c, x, relaxed)),
    }
}

fn candidate(
    set: &SemialgebraicSet,
    dnf: &[Vec<Atom>],
    kind: usize,
    radius: f64,
    rng: &mut ChaCha8Rng,
) -> Option<(Vec<Rat>, Option<Atom>)> {
    let n = set.n;
    match kind {
        0 => Some((to_rats(&annulus_point(n, radius, rng)), None)),
        1 => Some((lattice_point(n, radius, rng), None)),
        _ => {
            let conj = dnf.choose(rng)?;
            let atom = conj.iter().filter(|a| !a.poly.is_constant()).collect::<Vec<_>>();
            let atom = (*atom.choose(rng)?).clone();
            let start = if rng.gen_bool(0.5) {
                lattice_point(n, radius, rng)
            } else {
                to_rats(&annulus_point(n, radius, rng))
            };
            let target = boundary_target(atom.rel);
            if let Some(x) = solve_linear(&atom.poly, &target, &start, rng) {
                return Some((x, None));
            }
            let shifted = &atom.poly - &MPoly::constant(n, target);
            let x = newton(&shifted, &start)?;
            Some((x, Some(atom)))
        }
    }
}

fn in_annulus(x: &[Rat], radius: f64) -> bool {
    let norm = x.iter().map(|c| rat_to_f64(c).powi(2)).sum::<f64>().sqrt();
    norm >= radius && norm <= 4.0 * radius
}

/// Directions of accepted samples at `radius`, with the number of candidates drawn.
pub(crate) fn directions_at(
    set: &SemialgebraicSet,
    radius_index: usize,
    radius: f64,
    cfg: &SampleConfig,
) -> (Vec<Vec<f64>>, usize) {
    let dnf: Vec<Vec<Atom>> = set
        .formula
        .dnf()
        .into_iter()
        .filter(|c| !c.is_empty())
        .collect();
    let batches = cfg.n_samples.div_ceil(BATCH);
    let dirs: Vec<Vec<Vec<f64>>> = (0..batches)
        .into_par_iter()
        .map(|b| {
            let mut rng = batch_rng(cfg.seed, ((radius_index as u64) << 32) | (b as u64 + 1));
            let count = BATCH.min(cfg.n_samples - b * BATCH);
            let mut out = Vec::new();
            for i in 0..count {
                let kind = (b * BATCH + i) % 3;
                let Some((x, relaxed)) = candidate(set, &dnf, kind, radius, &mut rng) else {
                    continue;
                };
                if !in_annulus(&x, radius) || !holds(&set.formula, &x, relaxed.as_ref()) {
                    continue;
                }
                let xf: Vec<f64> = x.iter().map(rat_to_f64).collect();
                if let Some(d) = unit_direction(&xf) {
                    out.push(d);
                }
            }
            out
        })
        .collect();
    (dirs.into_iter().flatten().collect(), cfg.n_samples)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_set;

    #[test]
    fn hyperbola_points_are_exact() {
        let s = parse_set("x*y = 1 and y >= 1").unwrap();
        let cfg = SampleConfig::default();
        let (d, _) = directions_at(&s, 0, 1e4, &cfg);
        assert!(!d.is_empty());
        for u in &d {
            assert!(u[0].abs() < 1e-6);
        }
    }

    #[test]
    fn bounded_set_has_no_samples() {
        let s = parse_set("x^2 + y^2 <= 1").unwrap();
        let (d, _) = directions_at(&s, 0, 1e4, &SampleConfig::default());
        assert!(d.is_empty());
    }
}
