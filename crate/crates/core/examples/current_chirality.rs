//! Chiral current and chirality against the hopping phase at fixed
//! coupling, next to the closed-form plane-wave values.
//!
//! ```text
//! cargo run --release --example current_chirality -- [g1] [n_theta]
//! ```

use jc_trimer::meanfield::plane_wave_amplitude;
use jc_trimer::sweep::{figure_data, theta_axis, FigureKind, FigureSpec};
use jc_trimer::{make_params, normal::soft_mode, Observables, SolverOptions};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let g1: f64 = args.next().map(|a| a.parse()).transpose()?.unwrap_or(1.2);
    let n: usize = args.next().map(|a| a.parse()).transpose()?.unwrap_or(24);
    let base = make_params(1000.0, g1, 0.05, 0.0)?;
    let spec = FigureSpec {
        kind: FigureKind::CurrentChirality,
        thetas: theta_axis(n),
        g1_values: vec![g1],
    };
    let table = figure_data(&base, &spec, &SolverOptions::default())?;
    let theta = table.column("theta").unwrap_or_default();
    let current = table.column("current_scaled").unwrap_or_default();
    let chir = table.column("chirality_scaled").unwrap_or_default();
    let phase = table.text_column("phase").unwrap_or_default();

    println!(
        "{:>8} {:>5} {:>10} {:>10} {:>12}",
        "theta", "phase", "I/eta", "C/eta^2", "plane-wave I"
    );
    for i in 0..theta.len() {
        let p = base.with_theta(theta[i])?;
        // soft-mode plane wave, when the closed form exists
        let pw = plane_wave_amplitude(&p, soft_mode(&p))
            .map(|a| format!("{:+10.6}", Observables::evaluate(&a, &p).current))
            .unwrap_or_else(|_| "-".into());
        println!(
            "{:8.4} {:>5} {:+10.6} {:+10.6} {:>12}",
            theta[i], phase[i], current[i], chir[i], pw
        );
    }
    Ok(())
}
