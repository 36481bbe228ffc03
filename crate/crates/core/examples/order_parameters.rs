//! Order parameters `α_n/√η` against `g1`, both sign branches, at a chosen
//! hopping phase.
//!
//! ```text
//! cargo run --release --example order_parameters -- [theta]
//! ```

use jc_trimer::sweep::{figure_data, linspace, FigureKind, FigureSpec};
use jc_trimer::{make_params, SolverOptions};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let theta: f64 = std::env::args()
        .nth(1)
        .map(|a| a.parse())
        .transpose()?
        .unwrap_or(std::f64::consts::PI);
    let base = make_params(1000.0, 1.2, 0.05, theta)?;
    let spec = FigureSpec {
        kind: FigureKind::OrderParameters,
        thetas: vec![theta],
        g1_values: linspace(0.8, 1.3, 11),
    };
    let table = figure_data(&base, &spec, &SolverOptions::default())?;
    println!("{}", table.columns.join("  "));
    for row in &table.rows {
        let cells: Vec<String> = row
            .iter()
            .map(|v| match v {
                jc_trimer::sweep::Value::Num(x) => format!("{x:+.5}"),
                jc_trimer::sweep::Value::Text(s) => s.clone(),
            })
            .collect();
        println!("{}", cells.join("  "));
    }
    Ok(())
}
