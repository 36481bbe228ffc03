//! Multistart search for the mean-field ground state.
//!
//! Every start is relaxed independently by the local minimizer. Converged
//! end points are deduplicated modulo the global phase, their fluctuation
//! spectra are computed, and dynamically unstable points are discarded. The
//! survivor with the lowest full ground energy wins; exact ties (up to
//! `1e-9 ω₀`) go to the smaller current and then to the lexicographically
//! smallest gauge-fixed amplitudes, so the result does not depend on the
//! order in which starts finish.

use std::cmp::Ordering;
use std::f64::consts::TAU;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::energy::{plane_wave_amplitude, usp_amplitude};
use super::local::{minimize, LocalResult, Subspace};
use super::phase::{classify, PhaseLabel, PhaseTolerances};
use crate::bogoliubov::{build_form, diagonalize, np_branch_spectrum, BogoliubovSpectrum};
use crate::error::{Error, Result};
use crate::normal::Quasimomentum;
use crate::observables::{current, Observables};
use crate::params::{Amplitudes, SystemParams};

/// Relative energy window (units of `ω₀`) inside which candidates tie.
const ENERGY_TIE: f64 = 1e-9;
/// Distinctness scale for deduplication (units of `√η`).
const SAME_POINT: f64 = 1e-6;
/// End points smaller than this (units of `√η`) are snapped to zero.
const SNAP_ZERO: f64 = 1e-7;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolverOptions {
    /// Number of random starts on top of the structured seeds.
    pub n_random: usize,
    pub max_iter: usize,
    /// Convergence threshold on `max |D_n|`, in units of `ω₀`.
    pub tol_residual: f64,
    pub seed: u64,
    /// Additional starting points, e.g. a neighbouring sweep cell.
    pub extra_seeds: Vec<Amplitudes>,
    pub tolerances: PhaseTolerances,
}

impl Default for SolverOptions {
    fn default() -> Self {
        Self {
            n_random: 12,
            max_iter: 500,
            tol_residual: 1e-10,
            seed: 0,
            extra_seeds: Vec::new(),
            tolerances: PhaseTolerances::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeanFieldSolution {
    pub amplitudes: Amplitudes,
    pub classical_energy: f64,
    /// Full ground energy including the zero-point term.
    pub ground_energy: f64,
    pub spectrum: BogoliubovSpectrum,
    /// `max_n |D_n|`.
    pub residual: f64,
    pub phase: PhaseLabel,
    pub n_restarts_used: usize,
    pub seed: u64,
}

impl MeanFieldSolution {
    pub fn observables(&self, params: &SystemParams) -> Observables {
        Observables::evaluate(&self.amplitudes, params)
    }
}

/// The structured seeds, in a fixed order.
pub fn structured_seeds(params: &SystemParams) -> Vec<Amplitudes> {
    let mut seeds = vec![Amplitudes::ZERO];
    if let Ok(pair) = usp_amplitude(params) {
        seeds.extend(pair.into_iter().filter(|a| a.max_abs() > 0.0));
    }
    for q in Quasimomentum::ALL {
        if let Ok(a) = plane_wave_amplitude(params, q) {
            if a.max_abs() > 0.0 {
                seeds.push(a);
                seeds.push(a.scale(Complex64::new(-1.0, 0.0)));
            }
        }
    }
    let s = 0.5 * params.g1().max(0.5) * params.eta().sqrt();
    for (a, c) in [(s, -s), (s, -0.5 * s)] {
        let base = Amplitudes::from_real([a, a, c]);
        for shift in 0..3 {
            for sign in [1.0, -1.0] {
                seeds.push(base.translate(shift).scale(Complex64::new(sign, 0.0)));
            }
        }
    }
    seeds
}

/// `n` starts uniform in the disc `|α_n| ≤ 2 g1 √η` of each site.
pub fn random_seeds(params: &SystemParams, n: usize, seed: u64) -> Vec<Amplitudes> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let radius = 2.0 * params.g1() * params.eta().sqrt();
    (0..n)
        .map(|_| {
            Amplitudes(std::array::from_fn(|_| {
                let r = radius * rng.random::<f64>().sqrt();
                Complex64::from_polar(r, TAU * rng.random::<f64>())
            }))
        })
        .collect()
}

fn all_seeds(params: &SystemParams, opts: &SolverOptions) -> Vec<Amplitudes> {
    let mut seeds = structured_seeds(params);
    seeds.extend(random_seeds(params, opts.n_random, opts.seed));
    seeds.extend(opts.extra_seeds.iter().copied().filter(Amplitudes::is_finite));
    seeds
}

fn relax_all(
    seeds: &[Amplitudes],
    params: &SystemParams,
    opts: &SolverOptions,
    subspace: Subspace,
) -> Vec<LocalResult> {
    let tol = opts.tol_residual * params.omega0();
    seeds
        .par_iter()
        .map(|s| minimize(s, params, opts.max_iter, tol, subspace))
        .collect()
}

/// Converged end points, snapped and deduplicated modulo global phase.
fn distinct_endpoints(results: &[LocalResult], params: &SystemParams) -> Vec<LocalResult> {
    let scale = params.eta().sqrt();
    let mut out: Vec<LocalResult> = Vec::new();
    for r in results.iter().filter(|r| r.converged && r.alpha.is_finite()) {
        let mut r = *r;
        if r.alpha.max_abs() < SNAP_ZERO * scale {
            r.alpha = Amplitudes::ZERO;
            r.energy = super::energy::classical_energy(&r.alpha, params);
            r.residual = 0.0;
        }
        let duplicate = out
            .iter()
            .any(|o| o.alpha.distance_mod_phase(&r.alpha) < SAME_POINT * scale);
        if !duplicate {
            out.push(r);
        }
    }
    out
}

/// Fluctuation spectrum of a stationary point; `None` when the point has a
/// vanishing site next to displaced ones.
fn spectrum_of(alpha: &Amplitudes, params: &SystemParams) -> Option<BogoliubovSpectrum> {
    if alpha.max_abs() == 0.0 {
        return Some(np_branch_spectrum(params));
    }
    build_form(alpha, params).ok().map(|f| diagonalize(&f))
}

/// All dynamically stable stationary points found, best first.
pub fn candidates(params: &SystemParams, opts: &SolverOptions) -> Result<Vec<MeanFieldSolution>> {
    let seeds = all_seeds(params, opts);
    let results = relax_all(&seeds, params, opts, Subspace::Full);
    if !results.iter().any(|r| r.converged) {
        return Err(Error::NoConvergence {
            max_iter: opts.max_iter,
        });
    }
    let endpoints = distinct_endpoints(&results, params);
    let n_endpoints = endpoints.len();
    let mut stable: Vec<MeanFieldSolution> = endpoints
        .into_iter()
        .filter_map(|r| {
            let spectrum = spectrum_of(&r.alpha, params)?;
            let ground_energy = spectrum.ground_energy?;
            Some(MeanFieldSolution {
                amplitudes: r.alpha,
                classical_energy: r.energy,
                ground_energy,
                spectrum,
                residual: r.residual,
                phase: classify(&r.alpha, params, &opts.tolerances),
                n_restarts_used: seeds.len(),
                seed: opts.seed,
            })
        })
        .collect();
    if stable.is_empty() {
        return Err(Error::NoStableSolution {
            candidates: n_endpoints,
        });
    }
    rank(&mut stable, params, &opts.tolerances);
    Ok(stable)
}

/// Orders candidates by the staged rule described in the module docs.
fn rank(sols: &mut [MeanFieldSolution], params: &SystemParams, tol: &PhaseTolerances) {
    let e_tie = ENERGY_TIE * params.omega0();
    let tiny = 1e-12 * params.eta().sqrt();
    // stage keys are quantized relative to the group minimum so that the
    // comparison is a genuine total order
    let e_min = sols
        .iter()
        .map(|s| s.ground_energy)
        .fold(f64::INFINITY, f64::min);
    let key = |s: &MeanFieldSolution| {
        let energy_band = ((s.ground_energy - e_min) / e_tie).floor();
        (energy_band, current(&s.amplitudes, params).abs())
    };
    let i_min_in_band = |band: f64, sols: &[MeanFieldSolution]| {
        sols.iter()
            .filter(|s| key(s).0 == band)
            .map(|s| key(s).1)
            .fold(f64::INFINITY, f64::min)
    };
    let bands: Vec<(f64, f64)> = sols.iter().map(key).collect();
    let current_band: Vec<f64> = bands
        .iter()
        .map(|&(band, i)| ((i - i_min_in_band(band, sols)) / tol.cur).floor())
        .collect();

    let mut order: Vec<usize> = (0..sols.len()).collect();
    order.sort_by(|&a, &b| {
        bands[a]
            .0
            .total_cmp(&bands[b].0)
            .then(current_band[a].total_cmp(&current_band[b]))
            .then_with(|| lexicographic(&sols[a].amplitudes, &sols[b].amplitudes, tiny))
    });
    let sorted: Vec<MeanFieldSolution> = order.iter().map(|&i| sols[i].clone()).collect();
    sols.clone_from_slice(&sorted);
}

fn lexicographic(a: &Amplitudes, b: &Amplitudes, tiny: f64) -> Ordering {
    let (a, b) = (a.gauge_fixed(tiny), b.gauge_fixed(tiny));
    (0..3)
        .flat_map(|n| [(a[n].re, b[n].re), (a[n].im, b[n].im)])
        .map(|(x, y)| x.total_cmp(&y))
        .find(|o| o.is_ne())
        .unwrap_or(Ordering::Equal)
}

/// The mean-field ground state: lowest full ground energy among stable
/// stationary points.
pub fn solve(params: &SystemParams, opts: &SolverOptions) -> Result<MeanFieldSolution> {
    Ok(candidates(params, opts)?.swap_remove(0))
}

/// Lowest-energy stationary point restricted to real amplitudes. Only
/// meaningful for real hopping (`θ = 0` or `π`), where the real subspace is
/// invariant. The point may be a saddle of the full problem; its spectrum
/// is reported as found.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RealStationaryPoint {
    pub amplitudes: Amplitudes,
    pub classical_energy: f64,
    pub residual: f64,
    pub phase: PhaseLabel,
    pub spectrum: Option<BogoliubovSpectrum>,
}

pub fn solve_real(params: &SystemParams, opts: &SolverOptions) -> Result<RealStationaryPoint> {
    let theta = params.theta();
    if theta.sin().abs() > 1e-12 {
        return Err(Error::AnsatzUnavailable {
            ansatz: "real",
            theta,
        });
    }
    let mut seeds: Vec<Amplitudes> = all_seeds(params, opts)
        .into_iter()
        .map(|a| Amplitudes::from_real(a.0.map(|z| z.re)))
        .collect();
    seeds.dedup();
    let results = relax_all(&seeds, params, opts, Subspace::Real);
    let endpoints = distinct_endpoints(&results, params);
    let tiny = 1e-12 * params.eta().sqrt();
    let e_tie = ENERGY_TIE * params.omega0();
    let best = endpoints
        .into_iter()
        .min_by(|a, b| {
            let da = a.energy - b.energy;
            if da.abs() <= e_tie {
                lexicographic(&a.alpha, &b.alpha, tiny)
            } else {
                a.energy.total_cmp(&b.energy)
            }
        })
        .ok_or(Error::NoConvergence {
            max_iter: opts.max_iter,
        })?;
    Ok(RealStationaryPoint {
        amplitudes: best.alpha,
        classical_energy: best.energy,
        residual: best.residual,
        phase: classify(&best.alpha, params, &opts.tolerances),
        spectrum: spectrum_of(&best.alpha, params),
    })
}
