//! Damped Newton descent on the six real coordinates of the amplitudes.
//!
//! Each step solves `(H + λ I) p = −∇E` with `λ` raised until the shifted
//! Hessian is positive definite, followed by a backtracking line search.
//! Because every accepted step decreases the energy (or, once the energy is
//! flat to rounding, the gradient), iterates are attracted to minima rather
//! than saddles, except when started exactly on a stationary point.

use nalgebra::{Matrix6, Vector6};

use super::energy::{classical_energy, real_gradient, real_hessian};
use crate::params::{Amplitudes, SystemParams};

const LAMBDA_MIN: f64 = 1e-8;
const LAMBDA_MAX: f64 = 1e12;
const ARMIJO: f64 = 1e-4;
const MAX_BACKTRACK: usize = 40;
const POLISH_STEPS: usize = 4;

#[derive(Debug, Clone, Copy)]
pub(crate) struct LocalResult {
    pub alpha: Amplitudes,
    pub energy: f64,
    /// `max_n |D_n|`.
    pub residual: f64,
    pub converged: bool,
}

/// Coordinates frozen during the search; `Real` keeps `B_n = 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Subspace {
    Full,
    Real,
}

struct Problem<'a> {
    params: &'a SystemParams,
    subspace: Subspace,
}

impl Problem<'_> {
    fn amplitudes(&self, x: &Vector6<f64>) -> Amplitudes {
        Amplitudes::from_real_vec(&[x[0], x[1], x[2], x[3], x[4], x[5]])
    }

    fn energy(&self, x: &Vector6<f64>) -> f64 {
        classical_energy(&self.amplitudes(x), self.params)
    }

    fn gradient(&self, x: &Vector6<f64>) -> Vector6<f64> {
        let mut g = Vector6::from(real_gradient(&self.amplitudes(x), self.params));
        if self.subspace == Subspace::Real {
            g.fixed_rows_mut::<3>(3).fill(0.0);
        }
        g
    }

    fn hessian(&self, x: &Vector6<f64>) -> Matrix6<f64> {
        let h = real_hessian(&self.amplitudes(x), self.params);
        let mut m = Matrix6::from_fn(|r, c| h[r][c]);
        if self.subspace == Subspace::Real {
            for k in 3..6 {
                m.row_mut(k).fill(0.0);
                m.column_mut(k).fill(0.0);
                m[(k, k)] = 1.0;
            }
        }
        m
    }
}

/// `max_n |D_n|` from the real gradient `(2 Re D, 2 Im D)`.
fn residual_of(g: &Vector6<f64>) -> f64 {
    (0..3)
        .map(|n| 0.5 * g[n].hypot(g[n + 3]))
        .fold(0.0, f64::max)
}

pub(crate) fn minimize(
    start: &Amplitudes,
    params: &SystemParams,
    max_iter: usize,
    tol: f64,
    subspace: Subspace,
) -> LocalResult {
    let problem = Problem { params, subspace };
    let mut x = Vector6::from(start.to_real_vec());
    if subspace == Subspace::Real {
        x.fixed_rows_mut::<3>(3).fill(0.0);
    }
    // generous cap on a single step: the size of the search region
    let max_step = 2.0 * params.g1().max(0.5) * params.eta().sqrt();

    let mut e = problem.energy(&x);
    let mut g = problem.gradient(&x);
    let mut lambda = 1e-3;
    let mut iterations = 0;

    while iterations < max_iter {
        if residual_of(&g) < tol {
            break;
        }
        iterations += 1;
        let h = problem.hessian(&x);
        match descent_step(&problem, &x, e, &g, &h, &mut lambda, max_step) {
            Some((xn, en, gn)) => {
                x = xn;
                e = en;
                g = gn;
                lambda = (lambda / 3.0).max(LAMBDA_MIN);
            }
            None => break,
        }
    }

    let converged = residual_of(&g) < tol;
    if converged {
        polish(&problem, &mut x, &mut e, &mut g);
    }
    LocalResult {
        alpha: problem.amplitudes(&x),
        energy: e,
        residual: residual_of(&g),
        converged,
    }
}

/// One accepted step, or `None` once no shift makes progress.
fn descent_step(
    problem: &Problem<'_>,
    x: &Vector6<f64>,
    e: f64,
    g: &Vector6<f64>,
    h: &Matrix6<f64>,
    lambda: &mut f64,
    max_step: f64,
) -> Option<(Vector6<f64>, f64, Vector6<f64>)> {
    let g_norm = g.norm();
    let flat = 8.0 * f64::EPSILON * e.abs().max(1.0);
    while *lambda <= LAMBDA_MAX {
        let shifted = h + Matrix6::identity() * *lambda;
        let Some(chol) = shifted.cholesky() else {
            *lambda *= 10.0;
            continue;
        };
        let mut p = chol.solve(&(-g));
        let len = p.norm();
        if len > max_step {
            p *= max_step / len;
        }
        let slope = g.dot(&p);
        let mut t = 1.0;
        for _ in 0..MAX_BACKTRACK {
            let xn = x + p * t;
            let en = problem.energy(&xn);
            if en.is_finite() {
                let sufficient = en <= e + ARMIJO * t * slope;
                let gn = problem.gradient(&xn);
                // energy flat to rounding: accept on gradient decrease instead
                let flat_progress = en <= e + flat && gn.norm() < g_norm;
                if sufficient || flat_progress {
                    return Some((xn, en, gn));
                }
            }
            t *= 0.5;
        }
        *lambda *= 10.0;
    }
    None
}

/// Pure Newton steps (minimal shift) while the gradient keeps shrinking.
fn polish(problem: &Problem<'_>, x: &mut Vector6<f64>, e: &mut f64, g: &mut Vector6<f64>) {
    for _ in 0..POLISH_STEPS {
        let h = problem.hessian(x);
        let shifted = h + Matrix6::identity() * LAMBDA_MIN;
        let Some(chol) = shifted.cholesky() else {
            return;
        };
        let xn = *x + chol.solve(&(-*g));
        let gn = problem.gradient(&xn);
        // a NaN gradient also ends the polish
        if gn.norm().is_nan() || gn.norm() >= g.norm() {
            return;
        }
        *x = xn;
        *e = problem.energy(&xn);
        *g = gn;
    }
}
