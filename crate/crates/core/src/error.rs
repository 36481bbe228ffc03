use thiserror::Error;

/// Input validation failures for parameters and amplitudes.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParamError {
    #[error("{field}: value is not finite")]
    NonFinite { field: &'static str },
    #[error("{field}: {value} {reason}")]
    OutOfRange {
        field: &'static str,
        value: f64,
        reason: &'static str,
    },
}

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Param(#[from] ParamError),

    #[error("quasimomentum {0} is not one of 0, ±2π/3")]
    InvalidQuasimomentum(f64),

    #[error("critical coupling undefined: radicand {radicand} is not positive")]
    NonPositiveRadicand { radicand: f64 },

    #[error("coupling is at or below the superradiant threshold (radicand {radicand})")]
    BelowCritical { radicand: f64 },

    #[error("site {site} has vanishing displacement; use the normal-phase branch")]
    DegenerateSite { site: usize },

    #[error("no start converged within {max_iter} iterations")]
    NoConvergence { max_iter: usize },

    #[error("none of the {candidates} stationary points found is dynamically stable")]
    NoStableSolution { candidates: usize },

    #[error("the {ansatz} ansatz requires a real hopping amplitude (theta = 0 or pi), got theta = {theta}")]
    AnsatzUnavailable { ansatz: &'static str, theta: f64 },

    #[error("Hilbert-space dimension {dim} exceeds the cap {cap}")]
    DimensionCap { dim: usize, cap: usize },

    #[error("photon cutoff must be at least 1")]
    EmptyCutoff,

    #[error("scan window [{lo}, {hi}] does not bracket a phase boundary")]
    NoCrossing { lo: f64, hi: f64 },

    #[error("{failed} of {total} sweep cells failed")]
    SweepFailed { failed: usize, total: usize },

    #[error("invalid axis: {0}")]
    InvalidAxis(String),

    #[error("config line {line}: {message}")]
    Config { line: usize, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
