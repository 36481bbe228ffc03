//! Mean-field phases of a Jaynes-Cummings trimer: three cavities on a ring,
//! each coupled to a two-level atom, with photon hopping `J e^{iθ}`.
//!
//! Frequencies are measured in units of the cavity frequency. The main entry
//! points are [`solve`] for a single parameter point, [`sweep::sweep`] for
//! phase diagrams, and the [`oracle`] module for independent cross-checks.

pub mod bogoliubov;
pub mod error;
pub mod io;
pub mod meanfield;
pub mod normal;
pub mod observables;
pub mod oracle;
pub mod params;
pub mod svg;
pub mod sweep;

pub use bogoliubov::{BogoliubovSpectrum, QuadraticBosonForm};
pub use error::{Error, ParamError, Result};
pub use meanfield::{solve, MeanFieldSolution, PhaseLabel, SolverOptions};
pub use normal::{critical_coupling, NpSpectrum, Quasimomentum};
pub use observables::Observables;
pub use params::{make_params, Amplitudes, SystemParams};
