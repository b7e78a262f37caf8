//! Multistart Levenberg-Marquardt search for real common zeros on the unit sphere.

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use num_traits::Zero;
use serde::Serialize;

use crate::polyring::rational::simplest_between;
use crate::polyring::rational::rat_from_f64;
use crate::polyring::{MPoly, Rat};

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct NumericConfig {
    pub starts: usize,
    pub iterations: usize,
    pub tolerance: f64,
    pub seed: u64,
}

impl Default for NumericConfig {
    fn default() -> Self {
        NumericConfig {
            starts: 512,
            iterations: 100,
            tolerance: 1e-12,
            seed: 42,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct NumericResult {
    /// Sum of squares of the scaled equations at the best point.
    pub residual: f64,
    pub point: Vec<f64>,
    pub start: usize,
}

struct System {
    polys: Vec<MPoly>,
    grads: Vec<Vec<MPoly>>,
}

impl System {
    fn new(polys: &[MPoly]) -> System {
        let polys: Vec<MPoly> = polys
            .iter()
            .filter(|p| !p.is_zero())
            .map(|p| {
                let s = p.max_abs_coeff();
                p.scale(&rat_from_f64(1.0 / s))
            })
            .collect();
        let k = polys.first().map_or(0, MPoly::nvars);
        let grads = polys
            .iter()
            .map(|p| (0..k).map(|v| p.derivative(v)).collect())
            .collect();
        System { polys, grads }
    }

    fn residual(&self, z: &[f64]) -> f64 {
        self.polys.iter().map(|p| p.eval_f64(z).powi(2)).sum()
    }

    /// Residual vector `(p_i(z), |z|^2 - 1)` and its Jacobian.
    fn linearize(&self, z: &[f64]) -> (DVector<f64>, DMatrix<f64>) {
        let k = z.len();
        let rows = self.polys.len() + 1;
        let mut r = DVector::zeros(rows);
        let mut j = DMatrix::zeros(rows, k);
        for (i, (p, g)) in self.polys.iter().zip(&self.grads).enumerate() {
            r[i] = p.eval_f64(z);
            for v in 0..k {
                j[(i, v)] = g[v].eval_f64(z);
            }
        }
        let last = rows - 1;
        r[last] = z.iter().map(|a| a * a).sum::<f64>() - 1.0;
        for v in 0..k {
            j[(last, v)] = 2.0 * z[v];
        }
        (r, j)
    }

    fn run(&self, mut z: Vec<f64>, iterations: usize, tol: f64) -> (f64, Vec<f64>) {
        let mut lambda = 1e-3;
        let mut cost = self.cost(&z);
        for _ in 0..iterations {
            if self.residual(&z) < tol * 1e-4 {
                break;
            }
            let (r, j) = self.linearize(&z);
            let jt = j.transpose();
            let mut a = &jt * &j;
            for d in 0..z.len() {
                a[(d, d)] += lambda * (1.0 + a[(d, d)]);
            }
            let rhs = -(&jt * &r);
            let Some(step) = a.lu().solve(&rhs) else {
                lambda *= 10.0;
                continue;
            };
            let cand: Vec<f64> = z.iter().zip(step.iter()).map(|(a, b)| a + b).collect();
            let c = self.cost(&cand);
            if c < cost {
                z = cand;
                cost = c;
                lambda = (lambda / 3.0).max(1e-12);
            } else {
                lambda = (lambda * 4.0).min(1e12);
            }
        }
        normalize(&mut z);
        (self.residual(&z), z)
    }

    fn cost(&self, z: &[f64]) -> f64 {
        let s = z.iter().map(|a| a * a).sum::<f64>() - 1.0;
        self.residual(z) + s * s
    }
}

fn normalize(z: &mut [f64]) {
    let n = z.iter().map(|a| a * a).sum::<f64>().sqrt();
    if n > 0.0 {
        z.iter_mut().for_each(|a| *a /= n);
    }
}

/// Best point over all starts. Starts run in parallel; the merge keeps the lowest
/// residual and breaks ties by start index, so the result does not depend on scheduling.
pub fn search(polys: &[MPoly], cfg: &NumericConfig) -> Option<NumericResult> {
    let sys = System::new(polys);
    let k = polys.first()?.nvars();
    if sys.polys.is_empty() {
        let mut point = vec![0.0; k];
        point[0] = 1.0;
        return Some(NumericResult {
            residual: 0.0,
            point,
            start: 0,
        });
    }
    (0..cfg.starts)
        .into_par_iter()
        .map(|s| {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ (s as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
            let mut z: Vec<f64> = (0..k).map(|_| rng.gen_range(-1.0..1.0)).collect();
            normalize(&mut z);
            let (residual, point) = sys.run(z, cfg.iterations, cfg.tolerance);
            NumericResult {
                residual,
                point,
                start: s,
            }
        })
        .reduce_with(|a, b| {
            if (b.residual, b.start) < (a.residual, a.start) || a.residual.is_nan() {
                b
            } else {
                a
            }
        })
}

/// Tries to turn a float zero into an exact rational zero of all `polys`.
pub fn rationalize(polys: &[MPoly], z: &[f64]) -> Option<Vec<Rat>> {
    let (imax, zmax) = z
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.abs().total_cmp(&b.1.abs()))?;
    for digits in [4, 6, 8, 10] {
        let eps = 10f64.powi(-digits);
        let pt: Vec<Rat> = z
            .iter()
            .enumerate()
            .map(|(i, a)| {
                if i == imax {
                    return Rat::from_integer(1.into());
                }
                let v = a / zmax;
                simplest_between(&rat_from_f64(v - eps), &rat_from_f64(v + eps))
            })
            .collect();
        if polys.iter().all(|p| p.eval(&pt).is_zero()) {
            return Some(pt);
        }
    }
    None
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::parse_map;

    #[test]
    fn finds_and_rationalizes() {
        let f = parse_map("(x1, x2)").unwrap();
        let polys: Vec<MPoly> = f.fs().iter().map(|p| p.homogenize(1).unwrap()).collect();
        let cfg = NumericConfig {
            starts: 16,
            ..Default::default()
        };
        let r = search(&polys, &cfg).unwrap();
        assert!(r.residual < 1e-12);
        let exact = rationalize(&polys, &r.point).unwrap();
        assert_eq!(exact[1], Rat::zero());
        assert_eq!(exact[2], Rat::zero());
    }

    #[test]
    fn deterministic() {
        let f = parse_map("(x^2 + y^2 + 1, x*y)").unwrap();
        let polys: Vec<MPoly> = f.fs().iter().map(|p| p.homogenize(2).unwrap()).collect();
        let cfg = NumericConfig {
            starts: 32,
            ..Default::default()
        };
        assert_eq!(search(&polys, &cfg), search(&polys, &cfg));
    }
}
