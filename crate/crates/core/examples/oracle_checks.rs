//! Production solver against brute-force search, plus the analytic
//! gradient against finite differences, at a few random points.
//!
//! ```text
//! cargo run --release --example oracle_checks -- [n_points] [seed]
//! ```

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use jc_trimer::oracle::checks::{gradient_mismatch, random_amplitudes};
use jc_trimer::oracle::{brute_force_minimize, BruteBudget};
use jc_trimer::{make_params, solve, SolverOptions};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let n: usize = args.next().map(|a| a.parse()).transpose()?.unwrap_or(5);
    let seed: u64 = args.next().map(|a| a.parse()).transpose()?.unwrap_or(1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    println!("{:>6} {:>8} {:>5} {:>16} {:>10}", "g1", "theta", "phase", "E_cl", "brute-E");
    for k in 0..n {
        let g1 = rng.random_range(1.0..1.3);
        let theta = rng.random_range(-std::f64::consts::PI..std::f64::consts::PI);
        let p = make_params(1000.0, g1, 0.05, theta)?;
        let sol = solve(&p, &SolverOptions::default())?;
        let brute = brute_force_minimize(&p, &BruteBudget::default(), seed + k as u64);
        println!(
            "{g1:6.3} {theta:+8.4} {:>5} {:16.9} {:+10.2e}",
            sol.phase,
            sol.classical_energy,
            brute.classical_energy - sol.classical_energy
        );
    }

    let p = make_params(1000.0, 1.2, 0.05, 0.7)?;
    let points = random_amplitudes(&p, 100, seed);
    for step in [1e-3, 1e-4, 1e-5] {
        println!(
            "gradient vs finite differences, step {step:.0e} sqrt(eta): {:.3e}",
            gradient_mismatch(&p, &points, step)
        );
    }
    Ok(())
}
