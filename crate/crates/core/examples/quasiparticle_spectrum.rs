//! Lowest quasiparticle energy across the superradiant transition at
//! `θ = 0, π/2, π`, showing where the gap closes.
//!
//! ```text
//! cargo run --release --example quasiparticle_spectrum -- [n_points]
//! ```

use jc_trimer::normal::critical_coupling;
use jc_trimer::sweep::{figure_data, linspace, FigureKind, FigureSpec};
use jc_trimer::{make_params, SolverOptions};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let n: usize = std::env::args().nth(1).map(|a| a.parse()).transpose()?.unwrap_or(26);
    let base = make_params(1000.0, 1.2, 0.05, 0.0)?;
    let mut spec = FigureSpec::default_for(FigureKind::Spectrum);
    spec.g1_values = linspace(0.8, 1.3, n);
    let table = figure_data(&base, &spec, &SolverOptions::default())?;

    let thetas = table.column("theta").unwrap_or_default();
    let g1 = table.column("g1").unwrap_or_default();
    let eps_min = table.column("eps_min").unwrap_or_default();
    let gap = table.column("eps_gap").unwrap_or_default();
    let phase = table.text_column("phase").unwrap_or_default();

    for &theta in &spec.thetas {
        let g1c = critical_coupling(&base.with_theta(theta)?)?;
        println!("\ntheta = {theta:.4}   g1c = {g1c:.4}");
        println!("{:>8} {:>5} {:>12} {:>12}", "g1", "phase", "eps_min", "eps_gap");
        for i in (0..g1.len()).filter(|&i| thetas[i] == theta) {
            println!("{:8.4} {:>5} {:12.6} {:12.6}", g1[i], phase[i], eps_min[i], gap[i]);
        }
    }
    Ok(())
}
