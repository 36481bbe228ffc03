//! Quadratic fluctuation Hamiltonian around a mean-field configuration and
//! its Hopfield-Bogoliubov diagonalization.
//!
//! In the operator basis `v = (b₁†, b₂†, b₃†, b₁, b₂, b₃)` the fluctuation
//! Hamiltonian reads `½ v M v† + C₃`, with
//!
//! ```text
//!     M = | h   K  |      h_nn = μ_n, h_{n,n+1} = J e^{iθ}, h_{n+1,n} = J e^{−iθ}
//!         | K*  h* |      K = diag(ν₁, ν₂, ν₃)
//! ```
//!
//! The quasiparticle energies are the non-negative eigenvalues of `Σ M`,
//! `Σ = diag(1, 1, 1, −1, −1, −1)`. For positive semidefinite `M` they are
//! obtained from the Hermitian matrix `M^{1/2} Σ M^{1/2}`, which shares the
//! nonzero spectrum of `Σ M` and stays well conditioned at Goldstone modes.

use nalgebra::{Matrix6, SMatrix, Schur};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::meanfield::energy::usp_amplitude;
use crate::normal::{hopping_energy, np_dispersion, np_ground_energy, Quasimomentum};
use crate::params::{delta_from_norm_sqr, Amplitudes, SystemParams};

const SCHUR_EPS: f64 = 1e-15;
const SCHUR_MAX_ITER: usize = 10_000;

/// Eigenvalues within this distance of zero (units of `ω_c`) count as zero
/// modes; `M` is accepted as positive semidefinite down to `−ZERO_TOL`.
pub const ZERO_TOL: f64 = 1e-7;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuadraticBosonForm {
    pub mu: [f64; 3],
    pub nu: [Complex64; 3],
    /// `J e^{iθ}`
    pub hop: Complex64,
    pub c2: f64,
    pub c3: f64,
}

impl QuadraticBosonForm {
    /// Assembles a form from its coefficients; `C₃ = C₂ − ½ Σ μ_n`.
    pub fn new(mu: [f64; 3], nu: [Complex64; 3], hop: Complex64, c2: f64) -> Self {
        let c3 = c2 - 0.5 * mu.iter().sum::<f64>();
        Self {
            mu,
            nu,
            hop,
            c2,
            c3,
        }
    }

    /// The 6×6 Hermitian matrix `M`.
    pub fn matrix(&self) -> Matrix6<Complex64> {
        let mut m = Matrix6::<Complex64>::zeros();
        for n in 0..3 {
            let next = Amplitudes::next(n);
            m[(n, n)] = Complex64::new(self.mu[n], 0.0);
            m[(n + 3, n + 3)] = Complex64::new(self.mu[n], 0.0);
            m[(n, next)] = self.hop;
            m[(next, n)] = self.hop.conj();
            m[(n + 3, next + 3)] = self.hop.conj();
            m[(next + 3, n + 3)] = self.hop;
            m[(n, n + 3)] = self.nu[n];
            m[(n + 3, n)] = self.nu[n].conj();
        }
        m
    }
}

/// Builds the fluctuation form around `alpha`.
///
/// Fails with [`Error::DegenerateSite`] when a site displacement is so small
/// that `Δ_n² − ω₀²` underflows; the normal-phase branch applies there.
pub fn build_form(alpha: &Amplitudes, params: &SystemParams) -> Result<QuadraticBosonForm> {
    let g2 = params.g_squared();
    let g4 = g2 * g2;
    let w0 = params.omega0();
    let t = params.hopping();

    let mut mu = [0.0; 3];
    let mut nu = [Complex64::new(0.0, 0.0); 3];
    let mut c1 = 0.0;
    let mut site_sum = 0.0;
    for n in 0..3 {
        let a = alpha[n];
        let x = a.norm_sqr();
        if x < f64::EPSILON * params.eta() || g2 == 0.0 {
            return Err(Error::DegenerateSite { site: n });
        }
        let delta = delta_from_norm_sqr(x, params);
        let d2 = delta * delta;
        let d3 = d2 * delta;
        // Δ² − ω₀² by definition of Δ, free of cancellation
        let excess = 4.0 * g2 * x;
        mu[n] = 1.0 - 2.0 * g4 * x * (d2 + w0 * w0) / (d3 * excess);
        nu[n] = a * a * (2.0 * g4 / d3);
        c1 += x + 2.0 * (t * a.conj() * alpha[Amplitudes::next(n)]).re;
        site_sum += 0.5 * delta - 2.0 * g4 * x * w0 / (d2 * excess);
    }
    Ok(QuadraticBosonForm::new(mu, nu, t, c1 - site_sum))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BogoliubovSpectrum {
    /// Quasiparticle energies, ascending.
    pub eps: [f64; 3],
    pub stable: bool,
    /// `C₃ + ½ Σ ε_m`; `None` for unstable forms.
    pub ground_energy: Option<f64>,
    /// Smallest eigenvalue of `M`.
    pub min_curvature: f64,
    /// Largest imaginary part among the eigenvalues of `Σ M`.
    pub growth_rate: f64,
}

impl BogoliubovSpectrum {
    pub fn eps_min(&self) -> f64 {
        self.eps[0]
    }

    /// Lowest quasiparticle energy above `threshold`, skipping zero modes.
    pub fn lowest_above(&self, threshold: f64) -> Option<f64> {
        self.eps.iter().copied().find(|&e| e > threshold)
    }
}

pub fn diagonalize(form: &QuadraticBosonForm) -> BogoliubovSpectrum {
    let m = form.matrix();
    let eig = m.symmetric_eigen();
    let min_curvature = eig.eigenvalues.min();

    if min_curvature < -ZERO_TOL {
        let dyn_eigs = dynamical_eigenvalues(form);
        let growth_rate = if dyn_eigs.iter().any(|z| z.is_nan()) {
            f64::NAN
        } else {
            dyn_eigs.iter().map(|z| z.im.abs()).fold(0.0, f64::max)
        };
        let mut re: Vec<f64> = dyn_eigs.iter().map(|z| z.re).collect();
        re.sort_by(f64::total_cmp);
        return BogoliubovSpectrum {
            eps: [re[3], re[4], re[5]],
            stable: false,
            ground_energy: None,
            min_curvature,
            growth_rate,
        };
    }

    let sqrt_vals = eig.eigenvalues.map(|l| Complex64::new(l.max(0.0).sqrt(), 0.0));
    let u = &eig.eigenvectors;
    let root = u * Matrix6::from_diagonal(&sqrt_vals) * u.adjoint();
    let sigma = Matrix6::from_diagonal(&nalgebra::Vector6::from_fn(|i, _| {
        Complex64::new(if i < 3 { 1.0 } else { -1.0 }, 0.0)
    }));
    let w = root * sigma * root;
    // symmetrize away rounding before the Hermitian solver
    let w = (w + w.adjoint()) * Complex64::new(0.5, 0.0);
    let mut vals: Vec<f64> = w.symmetric_eigen().eigenvalues.iter().copied().collect();
    vals.sort_by(f64::total_cmp);
    let eps = [vals[3], vals[4], vals[5]];

    BogoliubovSpectrum {
        eps,
        stable: true,
        ground_energy: Some(form.c3 + 0.5 * eps.iter().sum::<f64>()),
        min_curvature,
        growth_rate: 0.0,
    }
}

/// Eigenvalues of the non-Hermitian dynamical matrix `Σ M`, sorted by real
/// then imaginary part.
///
/// Complex Schur of `Σ M` first; if that stalls, the 12×12 real embedding
/// `[[X, −Y], [Y, X]]`, which repeats every eigenvalue twice. Both are
/// iteration-capped, and NaN entries mark a spectrum neither could resolve.
pub fn dynamical_eigenvalues(form: &QuadraticBosonForm) -> [Complex64; 6] {
    let m = form.matrix();
    let sigma_m = SMatrix::<Complex64, 6, 6>::from_fn(|i, j| {
        if i < 3 {
            m[(i, j)]
        } else {
            -m[(i, j)]
        }
    });
    let mut all: Vec<Complex64> =
        match Schur::try_new(sigma_m, SCHUR_EPS, SCHUR_MAX_ITER).and_then(|s| s.eigenvalues()) {
            Some(ev) => ev.iter().copied().collect(),
            None => {
                let real = SMatrix::<f64, 12, 12>::from_fn(|i, j| {
                    let z = sigma_m[(i % 6, j % 6)];
                    match (i < 6, j < 6) {
                        (true, true) | (false, false) => z.re,
                        (true, false) => -z.im,
                        (false, true) => z.im,
                    }
                });
                match Schur::try_new(real, SCHUR_EPS, SCHUR_MAX_ITER) {
                    Some(s) => {
                        let ev: Vec<Complex64> = s.complex_eigenvalues().iter().copied().collect();
                        let mut ev = ev;
                        ev.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
                        ev.into_iter().step_by(2).collect()
                    }
                    None => return [Complex64::new(f64::NAN, f64::NAN); 6],
                }
            }
        };
    all.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    std::array::from_fn(|k| all[k])
}

/// Closed-form momentum-space spectrum of the uniform real solution.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UspSpectrum {
    /// Uniform amplitude `A₀` (positive branch).
    pub amplitude: f64,
    pub delta0: f64,
    pub mu0: f64,
    pub nu0: f64,
    /// `ω_q = μ₀ + 2J cos(θ − q)`
    pub omega_q: [(Quasimomentum, f64); 3],
    /// `ε_q = ½(ω_q − ω_{−q}) + ½ sqrt((ω_q + ω_{−q})² − 4ν₀²)`
    pub eps_q: [(Quasimomentum, f64); 3],
    pub c2: f64,
    /// `½ Σ_q (ε_q − ω_q) + C₂`
    pub ground_energy: f64,
}

impl UspSpectrum {
    pub fn omega(&self, q: Quasimomentum) -> f64 {
        lookup(&self.omega_q, q)
    }

    pub fn eps(&self, q: Quasimomentum) -> f64 {
        lookup(&self.eps_q, q)
    }

    pub fn sorted_eps(&self) -> [f64; 3] {
        let mut e = self.eps_q.map(|(_, e)| e);
        e.sort_by(f64::total_cmp);
        e
    }
}

fn lookup(table: &[(Quasimomentum, f64); 3], q: Quasimomentum) -> f64 {
    table
        .iter()
        .find(|(m, _)| *m == q)
        .map(|&(_, v)| v)
        .expect("all three modes are tabulated")
}

pub fn usp_spectrum(params: &SystemParams) -> Result<UspSpectrum> {
    let [plus, _] = usp_amplitude(params)?;
    if plus.max_abs() == 0.0 {
        return Err(Error::BelowCritical { radicand: 0.0 });
    }
    let form = build_form(&plus, params)?;
    let mu0 = form.mu[0];
    let nu0 = form.nu[0].re;
    let omega_q = Quasimomentum::ALL.map(|q| (q, mu0 + hopping_energy(params, q)));
    let omega = |q: Quasimomentum| lookup(&omega_q, q);
    let eps_q = Quasimomentum::ALL.map(|q| {
        let (wq, wmq) = (omega(q), omega(q.reversed()));
        let radicand = (wq + wmq).powi(2) - 4.0 * nu0 * nu0;
        // the q = 0 radicand vanishes identically on the closed form
        (q, 0.5 * (wq - wmq) + 0.5 * radicand.max(0.0).sqrt())
    });
    let ground_energy = 0.5
        * eps_q
            .iter()
            .zip(omega_q.iter())
            .map(|((_, e), (_, w))| e - w)
            .sum::<f64>()
        + form.c2;
    Ok(UspSpectrum {
        amplitude: plus[0].re,
        delta0: delta_from_norm_sqr(plus[0].norm_sqr(), params),
        mu0,
        nu0,
        omega_q,
        eps_q,
        c2: form.c2,
        ground_energy,
    })
}

/// Normal-phase dispersion wrapped as a spectrum (`ν = 0`), with the
/// normal-phase ground energy.
pub fn np_branch_spectrum(params: &SystemParams) -> BogoliubovSpectrum {
    let mut eps = Quasimomentum::ALL.map(|q| np_dispersion(params, q));
    eps.sort_by(f64::total_cmp);
    let stable = eps[0] >= -ZERO_TOL;
    BogoliubovSpectrum {
        eps,
        stable,
        ground_energy: stable.then(|| np_ground_energy(params)),
        min_curvature: eps[0],
        growth_rate: 0.0,
    }
}
