//! Brute-force minimization of the classical energy and finite-difference
//! gradients. Deliberately shares nothing with the production solver beyond
//! the energy functional itself: sampling is a plain ball search and the
//! local refinement is BFGS on the gradient alone.

use nalgebra::{SMatrix, SVector};
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::meanfield::{classical_energy, gradient, residual};
use crate::params::{Amplitudes, SystemParams};

type V6 = SVector<f64, 6>;
type M6 = SMatrix<f64, 6, 6>;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BruteBudget {
    /// Random samples in the 6-dimensional ball.
    pub samples: usize,
    /// Best samples refined by BFGS.
    pub refine: usize,
    pub max_iter: usize,
}

impl Default for BruteBudget {
    fn default() -> Self {
        Self {
            samples: 100_000,
            refine: 100,
            max_iter: 2_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BruteForceResult {
    pub amplitudes: Amplitudes,
    pub classical_energy: f64,
    /// `max_n |D_n|` at the returned point.
    pub residual: f64,
    pub samples: usize,
}

/// Uniform sample in the 6-ball of radius `r`.
fn ball_point(rng: &mut ChaCha8Rng, r: f64) -> V6 {
    let dir = V6::from_fn(|_, _| rng.sample::<f64, _>(StandardNormal));
    let radius = r * rng.random::<f64>().powf(1.0 / 6.0);
    dir * (radius / dir.norm())
}

fn energy_at(x: &V6, params: &SystemParams) -> f64 {
    classical_energy(&to_amplitudes(x), params)
}

fn to_amplitudes(x: &V6) -> Amplitudes {
    Amplitudes::from_real_vec(&[x[0], x[1], x[2], x[3], x[4], x[5]])
}

/// Real gradient `(∂E/∂A, ∂E/∂B) = 2 (Re D, Im D)`.
fn grad_at(x: &V6, params: &SystemParams) -> V6 {
    let d = gradient(&to_amplitudes(x), params);
    V6::from_fn(|k, _| if k < 3 { 2.0 * d[k].re } else { 2.0 * d[k - 3].im })
}

/// BFGS with backtracking; stops when `max |D_n| < tol`.
fn bfgs(start: V6, params: &SystemParams, tol: f64, max_iter: usize) -> (V6, f64) {
    let mut x = start;
    let mut e = energy_at(&x, params);
    let mut g = grad_at(&x, params);
    let mut inv_h = M6::identity();
    let flat = 8.0 * f64::EPSILON * e.abs().max(1.0);
    for _ in 0..max_iter {
        if residual(&to_amplitudes(&x), params) < tol {
            break;
        }
        let mut p = -(inv_h * g);
        if g.dot(&p) >= 0.0 {
            inv_h = M6::identity();
            p = -g;
        }
        let mut t = 1.0;
        let mut accepted = None;
        for _ in 0..60 {
            let xn = x + p * t;
            let en = energy_at(&xn, params);
            let gn = grad_at(&xn, params);
            if en <= e + 1e-4 * t * g.dot(&p) || (en <= e + flat && gn.norm() < g.norm()) {
                accepted = Some((xn, en, gn));
                break;
            }
            t *= 0.5;
        }
        let Some((xn, en, gn)) = accepted else {
            if inv_h == M6::identity() {
                break;
            }
            inv_h = M6::identity();
            continue;
        };
        let s = xn - x;
        let y = gn - g;
        let sy = s.dot(&y);
        if sy > 1e-300 {
            let rho = 1.0 / sy;
            let i = M6::identity();
            inv_h = (i - s * y.transpose() * rho) * inv_h * (i - y * s.transpose() * rho)
                + s * s.transpose() * rho;
        }
        x = xn;
        e = en;
        g = gn;
    }
    (x, e)
}

/// Dense random search followed by BFGS from the best samples.
pub fn brute_force_minimize(
    params: &SystemParams,
    budget: &BruteBudget,
    seed: u64,
) -> BruteForceResult {
    let radius = 2.0 * params.g1() * params.eta().sqrt();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut samples: Vec<(f64, V6)> = (0..budget.samples)
        .map(|_| {
            let x = ball_point(&mut rng, radius);
            (energy_at(&x, params), x)
        })
        .collect();
    samples.sort_by(|a, b| a.0.total_cmp(&b.0));
    samples.truncate(budget.refine.max(1));

    let tol = 1e-10 * params.omega0();
    let refined: Vec<(V6, f64)> = samples
        .par_iter()
        .map(|(_, x)| bfgs(*x, params, tol, budget.max_iter))
        .collect();
    let (x, e) = refined
        .into_iter()
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .expect("at least one refined sample");
    let amplitudes = to_amplitudes(&x);
    BruteForceResult {
        amplitudes,
        classical_energy: e,
        residual: residual(&amplitudes, params),
        samples: budget.samples,
    }
}

/// Central-difference Wirtinger derivative `½(∂E/∂A_n + i ∂E/∂B_n)`, the
/// convention in which it equals `D_n`.
pub fn finite_diff_gradient(alpha: &Amplitudes, params: &SystemParams, step: f64) -> Amplitudes {
    let x = alpha.to_real_vec();
    let partial = |k: usize| {
        let mut plus = x;
        let mut minus = x;
        plus[k] += step;
        minus[k] -= step;
        let ep = classical_energy(&Amplitudes::from_real_vec(&plus), params);
        let em = classical_energy(&Amplitudes::from_real_vec(&minus), params);
        (ep - em) / (2.0 * step)
    };
    Amplitudes(std::array::from_fn(|n| {
        Complex64::new(0.5 * partial(n), 0.5 * partial(n + 3))
    }))
}
