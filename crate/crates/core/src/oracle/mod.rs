//! Independent cross-checks: exact diagonalization in a truncated Fock
//! space, brute-force minimization of the classical energy, and finite
//! differences of its gradient.

pub mod brute;
pub mod checks;
pub mod ed;

pub use brute::{brute_force_minimize, finite_diff_gradient, BruteBudget, BruteForceResult};
pub use checks::{run_checks, Check, ValidationSettings};
pub use ed::{
    build_hamiltonian, commutator_norm, ed_ground, off_block_norm, photon_branch_check, EdResult,
    FockConfig, PhotonBranchCheck,
};
