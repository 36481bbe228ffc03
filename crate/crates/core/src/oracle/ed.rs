//! Exact diagonalization of the full trimer Hamiltonian in a truncated Fock
//! basis:
//!
//! ```text
//! H = Σ_n [ a_n†a_n + (ω₀/2) σ_n^z + g (a_n σ_n⁺ + a_n† σ_n⁻) ]
//!   + J Σ_n (e^{iθ} a_n† a_{n+1} + h.c.)
//! ```
//!
//! Basis states are product states `|n₁ s₁, n₂ s₂, n₃ s₃⟩` with photon
//! numbers `0..=n_max` and atomic states `s ∈ {g, e}`. Both couplings
//! conserve `N_tot = Σ (n + s)`, even after truncation, so number sectors are
//! exact blocks.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::normal::{np_dispersion, Quasimomentum};
use crate::params::SystemParams;

pub const DEFAULT_DIMENSION_CAP: usize = 20_000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FockConfig {
    pub n_max: usize,
    /// Restrict to one `N_tot` block.
    pub sector: Option<usize>,
    pub dimension_cap: usize,
}

impl FockConfig {
    pub fn new(n_max: usize, sector: Option<usize>) -> Result<Self> {
        let cfg = Self {
            n_max,
            sector,
            dimension_cap: DEFAULT_DIMENSION_CAP,
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn full_dimension(&self) -> usize {
        (self.n_max + 1).pow(3) * 8
    }

    fn validate(&self) -> Result<()> {
        if self.n_max == 0 {
            return Err(Error::EmptyCutoff);
        }
        let dim = self.full_dimension();
        if dim > self.dimension_cap {
            return Err(Error::DimensionCap {
                dim,
                cap: self.dimension_cap,
            });
        }
        Ok(())
    }
}

/// One product basis state: photon number and atomic excitation per site.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FockState {
    pub photons: [usize; 3],
    pub excited: [bool; 3],
}

impl FockState {
    pub fn excitations(&self) -> usize {
        self.photons.iter().sum::<usize>() + self.excited.iter().filter(|&&e| e).count()
    }
}

/// The basis of `cfg`, in lexicographic order of the product states.
pub fn basis(cfg: &FockConfig) -> Vec<FockState> {
    let n = cfg.n_max;
    let mut out = Vec::new();
    for index in 0..cfg.full_dimension() {
        let mut rest = index;
        let mut photons = [0; 3];
        let mut excited = [false; 3];
        for site in 0..3 {
            excited[site] = rest % 2 == 1;
            rest /= 2;
            photons[site] = rest % (n + 1);
            rest /= n + 1;
        }
        let s = FockState { photons, excited };
        if cfg.sector.is_none_or(|k| s.excitations() == k) {
            out.push(s);
        }
    }
    out
}

/// The Hamiltonian matrix on `basis(cfg)`.
pub fn build_hamiltonian(params: &SystemParams, cfg: &FockConfig) -> Result<DMatrix<Complex64>> {
    cfg.validate()?;
    let states = basis(cfg);
    check_dense(states.len())?;
    Ok(assemble(params, cfg, &states))
}

fn check_dense(dim: usize) -> Result<()> {
    if dim > DENSE_DIMENSION_CAP {
        Err(Error::DimensionCap {
            dim,
            cap: DENSE_DIMENSION_CAP,
        })
    } else {
        Ok(())
    }
}

/// Dense diagonalization is refused above this block size.
pub const DENSE_DIMENSION_CAP: usize = 4_000;

fn assemble(params: &SystemParams, cfg: &FockConfig, states: &[FockState]) -> DMatrix<Complex64> {
    let dim = states.len();
    let mut h = DMatrix::<Complex64>::zeros(dim, dim);
    for (row, col, v) in elements(params, cfg, states) {
        h[(row, col)] += v;
    }
    h
}

/// Nonzero matrix elements `(row, col, value)`, possibly repeated.
fn elements(
    params: &SystemParams,
    cfg: &FockConfig,
    states: &[FockState],
) -> Vec<(usize, usize, Complex64)> {
    let index: std::collections::HashMap<FockState, usize> =
        states.iter().enumerate().map(|(i, s)| (*s, i)).collect();
    let g = params.g();
    let w0 = params.omega0();
    let t = params.hopping();
    let mut h = Vec::new();

    for (col, s) in states.iter().enumerate() {
        let diag: f64 = (0..3)
            .map(|n| s.photons[n] as f64 + if s.excited[n] { 0.5 * w0 } else { -0.5 * w0 })
            .sum();
        h.push((col, col, Complex64::new(diag, 0.0)));

        for n in 0..3 {
            // g a_n σ_n⁺ : photon absorbed, atom excited
            if s.photons[n] > 0 && !s.excited[n] {
                let mut r = *s;
                r.photons[n] -= 1;
                r.excited[n] = true;
                let amp = g * (s.photons[n] as f64).sqrt();
                if let Some(&row) = index.get(&r) {
                    h.push((row, col, Complex64::new(amp, 0.0)));
                }
            }
            // g a_n† σ_n⁻ : photon emitted, atom relaxes
            if s.photons[n] < cfg.n_max && s.excited[n] {
                let mut r = *s;
                r.photons[n] += 1;
                r.excited[n] = false;
                let amp = g * (r.photons[n] as f64).sqrt();
                if let Some(&row) = index.get(&r) {
                    h.push((row, col, Complex64::new(amp, 0.0)));
                }
            }
            // J e^{iθ} a_n† a_{n+1} and its conjugate J e^{−iθ} a_{n+1}† a_n
            let m = (n + 1) % 3;
            for (to, from, coef) in [(n, m, t), (m, n, t.conj())] {
                if s.photons[from] > 0 && s.photons[to] < cfg.n_max {
                    let mut r = *s;
                    r.photons[from] -= 1;
                    r.photons[to] += 1;
                    let amp = ((s.photons[from]) as f64).sqrt() * (r.photons[to] as f64).sqrt();
                    if let Some(&row) = index.get(&r) {
                        h.push((row, col, coef * amp));
                    }
                }
            }
        }
    }
    h
}

/// Largest `|H_ij|` between states of different `N_tot`, on the full
/// truncated space. Equals the max-norm of `[H, N_tot]` divided by the
/// smallest number difference, and is exactly zero when the truncation
/// respects number conservation.
pub fn off_block_norm(params: &SystemParams, n_max: usize) -> Result<f64> {
    let cfg = FockConfig::new(n_max, None)?;
    let states = basis(&cfg);
    Ok(elements(params, &cfg, &states)
        .into_iter()
        .filter(|&(i, j, _)| states[i].excitations() != states[j].excitations())
        .map(|(_, _, v)| v.norm())
        .fold(0.0, f64::max))
}

/// Max-norm of `[H, N_tot]` on the full truncated space.
pub fn commutator_norm(params: &SystemParams, n_max: usize) -> Result<f64> {
    let cfg = FockConfig::new(n_max, None)?;
    let states = basis(&cfg);
    // (H N − N H)_ij = H_ij (N_j − N_i); accumulate repeated entries first
    let mut entries: std::collections::HashMap<(usize, usize), Complex64> =
        std::collections::HashMap::new();
    for (i, j, v) in elements(params, &cfg, &states) {
        *entries.entry((i, j)).or_default() += v;
    }
    Ok(entries
        .into_iter()
        .map(|((i, j), v)| {
            let dn = states[j].excitations() as f64 - states[i].excitations() as f64;
            (v * dn).norm()
        })
        .fold(0.0, f64::max))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GroundExpectations {
    pub a: [Complex64; 3],
    pub n_tot: f64,
    /// `⟨I⟩`, unscaled.
    pub current: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EdResult {
    pub eigenvalues: Vec<f64>,
    pub ground_expectations: GroundExpectations,
    pub commutator_norm: f64,
}

/// Full spectrum of the configured space plus ground-state expectations.
pub fn ed_ground(params: &SystemParams, cfg: &FockConfig) -> Result<EdResult> {
    cfg.validate()?;
    let states = basis(cfg);
    check_dense(states.len())?;
    let h = assemble(params, cfg, &states);
    let (values, vectors) = sorted_eigen(h);
    let ground = vectors.column(0).into_owned();
    Ok(EdResult {
        eigenvalues: values,
        ground_expectations: expectations(&states, &ground, cfg.n_max),
        commutator_norm: commutator_norm(params, cfg.n_max)?,
    })
}

fn sorted_eigen(h: DMatrix<Complex64>) -> (Vec<f64>, DMatrix<Complex64>) {
    let eig = h.symmetric_eigen();
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| eig.eigenvalues[a].total_cmp(&eig.eigenvalues[b]));
    let values = order.iter().map(|&k| eig.eigenvalues[k]).collect();
    let vectors = DMatrix::from_fn(eig.eigenvectors.nrows(), order.len(), |r, c| {
        eig.eigenvectors[(r, order[c])]
    });
    (values, vectors)
}

fn expectations(states: &[FockState], psi: &DVector<Complex64>, n_max: usize) -> GroundExpectations {
    let index: std::collections::HashMap<FockState, usize> =
        states.iter().enumerate().map(|(i, s)| (*s, i)).collect();
    let mut a = [Complex64::new(0.0, 0.0); 3];
    let mut n_tot = 0.0;
    // X = Σ_n a_n† a_{n+1}, I = −2 Im⟨X⟩
    let mut x = Complex64::new(0.0, 0.0);
    for (col, s) in states.iter().enumerate() {
        let c = psi[col];
        n_tot += c.norm_sqr() * s.excitations() as f64;
        #[allow(clippy::needless_range_loop)]
        for n in 0..3 {
            if s.photons[n] > 0 {
                let mut r = *s;
                r.photons[n] -= 1;
                if let Some(&row) = index.get(&r) {
                    a[n] += psi[row].conj() * c * (s.photons[n] as f64).sqrt();
                }
            }
            let m = (n + 1) % 3;
            if s.photons[m] > 0 && s.photons[n] < n_max {
                let mut r = *s;
                r.photons[m] -= 1;
                r.photons[n] += 1;
                if let Some(&row) = index.get(&r) {
                    let amp = (s.photons[m] as f64).sqrt() * (r.photons[n] as f64).sqrt();
                    x += psi[row].conj() * c * amp;
                }
            }
        }
    }
    GroundExpectations {
        a,
        n_tot,
        current: -2.0 * x.im,
    }
}

/// Photon-like branch of the single-excitation sector compared with the
/// effective normal-phase dispersion.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PhotonBranchCheck {
    /// Exact excitation energies above `−3ω₀/2`, ascending.
    pub exact: Vec<f64>,
    /// `ε_q`, ascending.
    pub effective: [f64; 3],
    /// Photon weight of each selected eigenstate.
    pub photon_weight: Vec<f64>,
    pub max_relative_error: f64,
}

/// Eigenstates of the `N_tot = 1` block whose single-photon weight exceeds
/// 0.9 are taken as the photon branch. The block is the same for every
/// cutoff `n_max ≥ 1`.
pub fn photon_branch_check(params: &SystemParams, n_max: usize) -> Result<PhotonBranchCheck> {
    let cfg = FockConfig::new(n_max, Some(1))?;
    let states = basis(&cfg);
    let h = assemble(params, &cfg, &states);
    let (values, vectors) = sorted_eigen(h);
    let vacuum = -1.5 * params.omega0();

    let mut exact = Vec::new();
    let mut photon_weight = Vec::new();
    for (k, &e) in values.iter().enumerate() {
        let w: f64 = states
            .iter()
            .enumerate()
            .filter(|(_, s)| s.photons.iter().sum::<usize>() == 1)
            .map(|(i, _)| vectors[(i, k)].norm_sqr())
            .sum();
        if w > 0.9 {
            exact.push(e - vacuum);
            photon_weight.push(w);
        }
    }
    let mut effective = Quasimomentum::ALL.map(|q| np_dispersion(params, q));
    effective.sort_by(f64::total_cmp);
    let max_relative_error = if exact.len() == 3 {
        exact
            .iter()
            .zip(effective.iter())
            .map(|(x, e)| ((x - e) / e).abs())
            .fold(0.0, f64::max)
    } else {
        f64::INFINITY
    };
    Ok(PhotonBranchCheck {
        exact,
        effective,
        photon_weight,
        max_relative_error,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::make_params;
    use std::f64::consts::PI;

    #[test]
    fn dimensions_and_cap() {
        assert_eq!(FockConfig::new(2, None).unwrap().full_dimension(), 216);
        assert_eq!(basis(&FockConfig::new(2, Some(1)).unwrap()).len(), 6);
        assert_eq!(basis(&FockConfig::new(2, Some(0)).unwrap()).len(), 1);
        assert!(matches!(FockConfig::new(0, None), Err(Error::EmptyCutoff)));
        assert!(matches!(
            FockConfig::new(20, None),
            Err(Error::DimensionCap { .. })
        ));
    }

    #[test]
    fn decoupled_limit() {
        let p = make_params(10.0, 0.0, 0.0, 0.0).unwrap();
        let r = ed_ground(&p, &FockConfig::new(2, None).unwrap()).unwrap();
        assert_eq!(r.eigenvalues[0], -15.0);
        // three single-photon states at −15 + 1
        assert_eq!(&r.eigenvalues[1..4], &[-14.0, -14.0, -14.0]);
    }

    #[test]
    fn large_blocks_are_refused() {
        let p = make_params(1000.0, 0.5, 0.05, 0.0).unwrap();
        let cfg = FockConfig::new(12, None).unwrap();
        assert!(matches!(
            ed_ground(&p, &cfg),
            Err(Error::DimensionCap { .. })
        ));
        // sparse checks still run on the full space
        assert_eq!(commutator_norm(&p, 6).unwrap(), 0.0);
    }

    #[test]
    fn vacuum_sector() {
        let p = make_params(1000.0, 0.5, 0.05, 0.3).unwrap();
        let h = build_hamiltonian(&p, &FockConfig::new(2, Some(0)).unwrap()).unwrap();
        assert_eq!(h.nrows(), 1);
        assert_eq!(h[(0, 0)].re, -1500.0);
    }

    #[test]
    fn hamiltonian_is_hermitian() {
        let p = make_params(50.0, 0.8, 0.07, 1.1).unwrap();
        let h = build_hamiltonian(&p, &FockConfig::new(2, None).unwrap()).unwrap();
        assert_eq!(h.adjoint(), h);
    }

    #[test]
    fn number_conservation_is_exact() {
        for theta in [0.0, 0.4, PI] {
            let p = make_params(1000.0, 1.2, 0.05, theta).unwrap();
            assert_eq!(commutator_norm(&p, 2).unwrap(), 0.0);
            assert_eq!(off_block_norm(&p, 2).unwrap(), 0.0);
        }
    }

    #[test]
    fn normal_phase_ground_state() {
        let p = make_params(1000.0, 0.5, 0.05, 0.5 * PI).unwrap();
        let r = ed_ground(&p, &FockConfig::new(2, None).unwrap()).unwrap();
        assert!(r.ground_expectations.a.iter().all(|a| a.norm() < 1e-10));
        assert!(r.ground_expectations.current.abs() < 1e-10);
        assert!(r.ground_expectations.n_tot.abs() < 1e-10);
    }

    #[test]
    fn photon_branch_tracks_dispersion() {
        let p = make_params(1000.0, 0.5, 0.05, 0.0).unwrap();
        let c = photon_branch_check(&p, 2).unwrap();
        assert_eq!(c.exact.len(), 3);
        assert!(c.max_relative_error < 1e-2);
        let q = make_params(1e4, 0.5, 0.05, 0.0).unwrap();
        let d = photon_branch_check(&q, 1).unwrap();
        assert!(d.max_relative_error < 1e-3);
        assert!(d.max_relative_error < c.max_relative_error);
    }
}
