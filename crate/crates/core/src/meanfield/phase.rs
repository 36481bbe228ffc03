use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::observables::current;
use crate::params::{Amplitudes, SystemParams};

/// Ground-state phase of the trimer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PhaseLabel {
    /// Normal phase, zero displacement.
    NP,
    /// Uniform superradiant phase.
    USP,
    /// Frustrated superradiant phase: nonuniform, no current.
    FSP,
    /// Chirally frustrated superradiant phase: circulating current.
    CFSP,
}

impl PhaseLabel {
    pub const ALL: [PhaseLabel; 4] = [Self::NP, Self::USP, Self::FSP, Self::CFSP];

    pub fn as_str(self) -> &'static str {
        match self {
            Self::NP => "NP",
            Self::USP => "USP",
            Self::FSP => "FSP",
            Self::CFSP => "CFSP",
        }
    }
}

impl fmt::Display for PhaseLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for PhaseLabel {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL
            .into_iter()
            .find(|p| p.as_str() == s)
            .ok_or_else(|| format!("unknown phase label {s:?}"))
    }
}

/// Classification thresholds; `np` and `unif` are in units of `√η`, `cur` in
/// units of `η`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhaseTolerances {
    pub np: f64,
    pub unif: f64,
    pub cur: f64,
}

impl Default for PhaseTolerances {
    fn default() -> Self {
        Self {
            np: 1e-4,
            unif: 1e-6,
            cur: 1e-8,
        }
    }
}

pub fn classify(alpha: &Amplitudes, params: &SystemParams, tol: &PhaseTolerances) -> PhaseLabel {
    let scale = params.eta().sqrt();
    if alpha.max_abs() < tol.np * scale {
        return PhaseLabel::NP;
    }
    let fixed = alpha.gauge_fixed(tol.np * scale);
    let spread = (0..3)
        .map(|n| (fixed[n] - fixed[Amplitudes::next(n)]).norm())
        .fold(0.0, f64::max);
    if spread < tol.unif * scale {
        PhaseLabel::USP
    } else if current(alpha, params).abs() < tol.cur {
        PhaseLabel::FSP
    } else {
        PhaseLabel::CFSP
    }
}
