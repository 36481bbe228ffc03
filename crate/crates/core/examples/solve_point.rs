//! Solve one parameter point and print the ground state, its spectrum and
//! the competing stationary points.
//!
//! ```text
//! cargo run --example solve_point -- 1.2 1.5707963
//! ```

use jc_trimer::meanfield::candidates;
use jc_trimer::{make_params, solve, SolverOptions};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<f64> = std::env::args()
        .skip(1)
        .map(|a| a.parse())
        .collect::<Result<_, _>>()?;
    let g1 = args.first().copied().unwrap_or(1.2);
    let theta = args.get(1).copied().unwrap_or(std::f64::consts::FRAC_PI_2);
    let params = make_params(1000.0, g1, 0.05, theta)?;
    let opts = SolverOptions::default();

    let sol = solve(&params, &opts)?;
    let obs = sol.observables(&params);
    println!("{params}");
    println!("phase            {}", sol.phase);
    println!("E_g              {:.9}", sol.ground_energy);
    println!("E_cl             {:.9}", sol.classical_energy);
    println!("residual         {:.3e}", sol.residual);
    println!("eps              {:?}", sol.spectrum.eps);
    for (n, z) in obs.order_params.iter().enumerate() {
        println!("alpha_{}/sqrt(eta) {:+.9} {:+.9}i", n + 1, z.re, z.im);
    }
    println!("I/eta            {:+.9}", obs.current);
    println!("C/eta^2          {:+.9}", obs.chirality);

    println!("\nstable stationary points:");
    for c in candidates(&params, &opts)? {
        println!(
            "  {:<4} E_g = {:.9}  E_cl = {:.9}  I/eta = {:+.6}",
            c.phase,
            c.ground_energy,
            c.classical_energy,
            c.observables(&params).current
        );
    }
    Ok(())
}
