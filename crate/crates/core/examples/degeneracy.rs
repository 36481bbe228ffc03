//! Symmetry-related copies of a ground state. At `θ = 0` the full search
//! and the search restricted to real amplitudes land on different
//! stationary points; both orbits are printed.
//!
//! ```text
//! cargo run --release --example degeneracy -- [g1] [theta]
//! ```

use jc_trimer::meanfield::{degenerate_orbit, orbit_amplitudes, solve_real};
use jc_trimer::{make_params, solve, SolverOptions};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let g1: f64 = args.next().map(|a| a.parse()).transpose()?.unwrap_or(1.2);
    let theta: f64 = args.next().map(|a| a.parse()).transpose()?.unwrap_or(0.0);
    let params = make_params(1000.0, g1, 0.05, theta)?;
    let opts = SolverOptions::default();
    let scale = params.eta().sqrt();

    let sol = solve(&params, &opts)?;
    let orbit = degenerate_orbit(&sol, &params);
    println!("ground state {} with {} distinct copies", sol.phase, orbit.len());
    for member in &orbit {
        let a = member.amplitudes.0.map(|z| z / scale);
        println!(
            "  E_cl = {:.10}   {:+.5} {:+.5} {:+.5}",
            member.classical_energy, a[0], a[1], a[2]
        );
    }

    match solve_real(&params, &opts) {
        Ok(real) => {
            let copies = orbit_amplitudes(&real.amplitudes, &params);
            let stable = real.spectrum.as_ref().is_some_and(|s| s.stable);
            println!(
                "\nbest real stationary point {} (E_cl = {:.10}, stable: {stable}) with {} copies",
                real.phase,
                real.classical_energy,
                copies.len()
            );
            for a in copies {
                let a = a.0.map(|z| z.re / scale);
                println!("  {:+.5} {:+.5} {:+.5}", a[0], a[1], a[2]);
            }
        }
        Err(e) => println!("\nreal-amplitude search skipped: {e}"),
    }
    Ok(())
}
