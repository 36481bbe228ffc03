//! Mean-field ground state: the classical energy functional, a multistart
//! minimizer, phase classification and symmetry orbits.

pub mod energy;
mod local;
mod orbit;
mod phase;
mod solver;

pub use energy::{classical_energy, gradient, plane_wave_amplitude, residual, usp_amplitude};
pub use orbit::{degenerate_orbit, orbit_amplitudes};
pub use phase::{classify, PhaseLabel, PhaseTolerances};
pub use solver::{
    candidates, random_seeds, solve, solve_real, structured_seeds, MeanFieldSolution,
    RealStationaryPoint, SolverOptions,
};
