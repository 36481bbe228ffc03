//! Normal phase: photon dispersion of the effective cavity Hamiltonian with
//! all atoms in their ground state, the critical coupling, and the
//! normal-phase ground energy.

use std::f64::consts::PI;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::params::SystemParams;

/// Discrete quasimomentum of the three-site ring.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Quasimomentum {
    Zero,
    /// `q = −2π/3`
    Minus,
    /// `q = +2π/3`
    Plus,
}

impl Quasimomentum {
    /// Ordered by increasing `|q|`, which is the tie-break order used when
    /// two modes are degenerate.
    pub const ALL: [Quasimomentum; 3] = [Self::Zero, Self::Minus, Self::Plus];

    pub fn value(self) -> f64 {
        match self {
            Self::Zero => 0.0,
            Self::Minus => -2.0 * PI / 3.0,
            Self::Plus => 2.0 * PI / 3.0,
        }
    }

    /// `q → −q`.
    pub fn reversed(self) -> Self {
        match self {
            Self::Zero => Self::Zero,
            Self::Minus => Self::Plus,
            Self::Plus => Self::Minus,
        }
    }
}

impl TryFrom<f64> for Quasimomentum {
    type Error = Error;

    fn try_from(q: f64) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|m| (m.value() - q).abs() < 1e-9)
            .ok_or(Error::InvalidQuasimomentum(q))
    }
}

impl fmt::Display for Quasimomentum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Zero => "0",
            Self::Minus => "-2pi/3",
            Self::Plus => "+2pi/3",
        })
    }
}

/// Hopping contribution `2J cos(θ − q)` to the mode energy.
pub fn hopping_energy(params: &SystemParams, q: Quasimomentum) -> f64 {
    2.0 * params.j() * (params.theta() - q.value()).cos()
}

/// `ε_q = ω_c(1 − g1²) + 2J cos(θ − q)`, the normal-phase photon mode energy.
pub fn np_dispersion(params: &SystemParams, q: Quasimomentum) -> f64 {
    let g1 = params.g1();
    (1.0 - g1 * g1) + hopping_energy(params, q)
}

/// Same as [`np_dispersion`] but for a raw quasimomentum value, which must be
/// one of `0, ±2π/3`.
pub fn np_dispersion_at(params: &SystemParams, q: f64) -> Result<f64> {
    Ok(np_dispersion(params, Quasimomentum::try_from(q)?))
}

/// The mode that softens first: the minimizer of `cos(θ − q)`.
pub fn soft_mode(params: &SystemParams) -> Quasimomentum {
    let mut best = Quasimomentum::Zero;
    let mut best_cos = f64::INFINITY;
    for q in Quasimomentum::ALL {
        let c = (params.theta() - q.value()).cos();
        // strict comparison keeps the smaller-|q| mode on exact ties
        if c < best_cos - 1e-14 {
            best = q;
            best_cos = c;
        }
    }
    best
}

/// `g1c = sqrt(1 + 2J cos(θ − q_θ))`.
pub fn critical_coupling(params: &SystemParams) -> Result<f64> {
    let radicand = 1.0 + hopping_energy(params, soft_mode(params));
    if radicand <= 0.0 {
        return Err(Error::NonPositiveRadicand { radicand });
    }
    Ok(radicand.sqrt())
}

/// `E_g = −3 ω̃₀ / 2` with `ω̃₀ = ω₀ + ω_c g1²`.
pub fn np_ground_energy(params: &SystemParams) -> f64 {
    let g1 = params.g1();
    -1.5 * (params.omega0() + g1 * g1)
}

/// Normal-phase spectrum, reported on both sides of the transition.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NpSpectrum {
    /// `(q, ε_q)` in the order of [`Quasimomentum::ALL`].
    pub eps_q: [(Quasimomentum, f64); 3],
    pub ground_energy: f64,
    /// False once any mode energy is negative, i.e. above `g1c`.
    pub stable: bool,
}

impl NpSpectrum {
    pub fn new(params: &SystemParams) -> Self {
        let eps_q = Quasimomentum::ALL.map(|q| (q, np_dispersion(params, q)));
        let stable = eps_q.iter().all(|&(_, e)| e >= 0.0);
        Self {
            eps_q,
            ground_energy: np_ground_energy(params),
            stable,
        }
    }

    pub fn min_energy(&self) -> f64 {
        self.eps_q.iter().map(|&(_, e)| e).fold(f64::INFINITY, f64::min)
    }

    pub fn energy(&self, q: Quasimomentum) -> f64 {
        self.eps_q
            .iter()
            .find(|(m, _)| *m == q)
            .map(|&(_, e)| e)
            .expect("all three modes are present")
    }
}
