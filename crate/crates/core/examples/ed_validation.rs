//! Exact diagonalization checks in a truncated Fock space: number
//! conservation and the single-excitation photon branch against the
//! effective normal-phase dispersion, at two atomic frequencies.
//!
//! ```text
//! cargo run --release --example ed_validation -- [n_max]
//! ```

use std::time::Instant;

use jc_trimer::make_params;
use jc_trimer::oracle::{commutator_norm, ed_ground, photon_branch_check, FockConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let n_max: usize = std::env::args().nth(1).map(|a| a.parse()).transpose()?.unwrap_or(2);
    let theta = 0.5 * std::f64::consts::PI;

    let p = make_params(1000.0, 0.5, 0.05, theta)?;
    println!("max |[H, N_tot]| = {:.3e}", commutator_norm(&p, n_max)?);

    for omega0 in [1e3, 1e4] {
        let p = make_params(omega0, 0.5, 0.05, theta)?;
        let t = Instant::now();
        let check = photon_branch_check(&p, n_max)?;
        println!(
            "\nomega0 = {omega0:.0e}  ({:.3} s)\n  exact     {:?}\n  effective {:?}\n  max relative error {:.3e}",
            t.elapsed().as_secs_f64(),
            check.exact,
            check.effective,
            check.max_relative_error
        );
    }

    let cfg = FockConfig::new(n_max, Some(2))?;
    let ed = ed_ground(&p, &cfg)?;
    println!(
        "\nN_tot = 2 block: {} states, lowest {:.6}, <N_tot> = {:.12}, <I> = {:+.3e}",
        ed.eigenvalues.len(),
        ed.eigenvalues[0],
        ed.ground_expectations.n_tot,
        ed.ground_expectations.current
    );
    Ok(())
}
