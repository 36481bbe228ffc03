//! Phase diagram on the `(θ, g1)` plane, written as CSV plus an SVG heatmap.
//!
//! ```text
//! cargo run --release --example phase_diagram -- [n_theta] [n_g1] [out_dir]
//! ```

use std::path::PathBuf;
use std::time::Instant;

use jc_trimer::io::write_phase_diagram_csv;
use jc_trimer::normal::critical_coupling;
use jc_trimer::svg::phase_heatmap;
use jc_trimer::sweep::{linspace, sweep, theta_axis};
use jc_trimer::{make_params, PhaseLabel, SolverOptions};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let n_theta: usize = args.next().map(|a| a.parse()).transpose()?.unwrap_or(200);
    let n_g1: usize = args.next().map(|a| a.parse()).transpose()?.unwrap_or(200);
    let out = PathBuf::from(args.next().unwrap_or_else(|| ".".into()));
    std::fs::create_dir_all(&out)?;

    let base = make_params(1000.0, 1.2, 0.05, 0.0)?;
    let g1_axis = linspace(0.8, 1.3, n_g1);
    let thetas = theta_axis(n_theta);

    let start = Instant::now();
    let grid = sweep(&base, &g1_axis, &thetas, &SolverOptions::default())?;
    println!(
        "{} cells in {:.1} s, {} failed",
        grid.cells.len(),
        start.elapsed().as_secs_f64(),
        grid.failures()
    );

    for p in PhaseLabel::ALL {
        let n = grid.cells.iter().filter(|c| c.phase() == Some(p)).count();
        println!("{p:<5} {n:>6} cells");
    }

    // NP boundary against the critical-coupling formula
    let step = g1_axis.get(1).map_or(0.0, |g| g - g1_axis[0]);
    let mut worst = 0.0f64;
    for (it, &theta) in thetas.iter().enumerate() {
        let first_sp = (0..n_g1).find(|&ig| {
            grid.cell(it, ig)
                .phase()
                .is_some_and(|p| p != PhaseLabel::NP)
        });
        if let Some(ig) = first_sp {
            let g1c = critical_coupling(&base.with_theta(theta)?)?;
            worst = worst.max((g1_axis[ig] - g1c).abs());
        }
    }
    println!("largest NP boundary offset {worst:.2e} (grid step {step:.2e})");

    write_phase_diagram_csv(&out.join("phase_diagram.csv"), &grid)?;
    std::fs::write(out.join("phase_diagram.svg"), phase_heatmap(&grid))?;
    println!("wrote {}", out.join("phase_diagram.csv").display());
    Ok(())
}
