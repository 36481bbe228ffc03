//! Minimal SVG rendering of sweep grids and figure tables. The CSV files are
//! the data contract; these pictures are for a quick look only.

use std::fmt::Write as _;

use crate::meanfield::PhaseLabel;
use crate::sweep::{FigureKind, FigureTable, SweepGrid};

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 480.0;
const MARGIN: f64 = 60.0;
const PALETTE: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"];

fn phase_color(p: Option<PhaseLabel>) -> &'static str {
    match p {
        Some(PhaseLabel::NP) => "#d9d9d9",
        Some(PhaseLabel::USP) => "#6baed6",
        Some(PhaseLabel::FSP) => "#74c476",
        Some(PhaseLabel::CFSP) => "#fd8d3c",
        None => "#000000",
    }
}

fn header(title: &str) -> String {
    format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{WIDTH}\" height=\"{HEIGHT}\" \
         font-family=\"sans-serif\" font-size=\"12\">\n\
         <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n\
         <text x=\"{}\" y=\"24\" text-anchor=\"middle\" font-size=\"14\">{title}</text>\n",
        WIDTH / 2.0
    )
}

fn axes(out: &mut String, x_label: &str, y_label: &str, x: (f64, f64), y: (f64, f64)) {
    let (x0, x1, y0, y1) = (MARGIN, WIDTH - MARGIN, HEIGHT - MARGIN, MARGIN);
    let _ = writeln!(
        out,
        "<rect x=\"{x0}\" y=\"{y1}\" width=\"{}\" height=\"{}\" fill=\"none\" stroke=\"black\"/>",
        x1 - x0,
        y0 - y1
    );
    let _ = writeln!(
        out,
        "<text x=\"{}\" y=\"{}\" text-anchor=\"middle\">{x_label}</text>",
        WIDTH / 2.0,
        HEIGHT - 15.0
    );
    let _ = writeln!(
        out,
        "<text x=\"15\" y=\"{}\" text-anchor=\"middle\" transform=\"rotate(-90 15 {})\">{y_label}</text>",
        HEIGHT / 2.0,
        HEIGHT / 2.0
    );
    for (v, px, py, anchor) in [
        (x.0, x0, y0 + 16.0, "middle"),
        (x.1, x1, y0 + 16.0, "middle"),
        (y.0, x0 - 6.0, y0, "end"),
        (y.1, x0 - 6.0, y1 + 4.0, "end"),
    ] {
        let _ = writeln!(
            out,
            "<text x=\"{px}\" y=\"{py}\" text-anchor=\"{anchor}\">{v:.3}</text>"
        );
    }
}

fn span(values: impl Iterator<Item = f64>) -> (f64, f64) {
    let (lo, hi) = values
        .filter(|v| v.is_finite())
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(a, b), v| (a.min(v), b.max(v)));
    if !lo.is_finite() {
        (0.0, 1.0)
    } else if hi - lo < 1e-12 {
        (lo - 0.5, hi + 0.5)
    } else {
        (lo, hi)
    }
}

/// Phase labels on the `(θ, g1)` plane.
pub fn phase_heatmap(grid: &SweepGrid) -> String {
    let mut out = header("Ground-state phase");
    let nt = grid.theta_axis.len();
    let ng = grid.g1_axis.len();
    let tx = span(grid.theta_axis.iter().copied());
    let gy = span(grid.g1_axis.iter().copied());
    let cw = (WIDTH - 2.0 * MARGIN) / nt as f64;
    let ch = (HEIGHT - 2.0 * MARGIN) / ng as f64;
    for it in 0..nt {
        for ig in 0..ng {
            let c = grid.cell(it, ig);
            let _ = writeln!(
                out,
                "<rect x=\"{:.2}\" y=\"{:.2}\" width=\"{:.2}\" height=\"{:.2}\" fill=\"{}\"/>",
                MARGIN + it as f64 * cw,
                HEIGHT - MARGIN - (ig + 1) as f64 * ch,
                cw + 0.05,
                ch + 0.05,
                phase_color(c.phase())
            );
        }
    }
    axes(&mut out, "theta", "g1", tx, gy);
    for (k, p) in PhaseLabel::ALL.into_iter().enumerate() {
        let x = WIDTH - MARGIN + 8.0;
        let y = MARGIN + 18.0 * k as f64;
        let _ = writeln!(
            out,
            "<rect x=\"{x}\" y=\"{y}\" width=\"12\" height=\"12\" fill=\"{}\"/>\
             <text x=\"{}\" y=\"{}\">{p}</text>",
            phase_color(Some(p)),
            x + 16.0,
            y + 10.0
        );
    }
    out.push_str("</svg>\n");
    out
}

/// Line plot of one figure table: one polyline per curve and y column.
pub fn figure_plot(table: &FigureTable) -> String {
    let (x_name, curve_name, y_names, title): (&str, &str, &[&str], &str) = match table.kind {
        FigureKind::Spectrum => ("g1", "theta", &["eps_min", "eps_gap"], "Quasiparticle energy"),
        FigureKind::OrderParameters => (
            "g1",
            "theta",
            &["alpha1_re", "alpha2_re", "alpha3_re"],
            "Order parameters (real parts)",
        ),
        FigureKind::CurrentChirality => (
            "theta",
            "g1",
            &["current_scaled", "chirality_scaled"],
            "Current and chirality",
        ),
    };
    let xs = table.column(x_name).unwrap_or_default();
    let curves = table.column(curve_name).unwrap_or_default();
    let branch = table.column("branch");
    let ys: Vec<Vec<f64>> = y_names
        .iter()
        .map(|n| table.column(n).unwrap_or_default())
        .collect();
    let xr = span(xs.iter().copied());
    let yr = span(ys.iter().flatten().copied());
    let px = |x: f64| MARGIN + (x - xr.0) / (xr.1 - xr.0) * (WIDTH - 2.0 * MARGIN);
    let py = |y: f64| HEIGHT - MARGIN - (y - yr.0) / (yr.1 - yr.0) * (HEIGHT - 2.0 * MARGIN);

    let mut keys: Vec<f64> = Vec::new();
    for &c in &curves {
        if !keys.contains(&c) {
            keys.push(c);
        }
    }
    let mut out = header(title);
    let mut color = 0;
    for &key in &keys {
        for (yi, y) in ys.iter().enumerate() {
            for b in [1.0, -1.0] {
                let points: Vec<String> = (0..xs.len())
                    .filter(|&i| curves[i] == key)
                    .filter(|&i| branch.as_ref().is_none_or(|br| br[i] == b))
                    .filter(|&i| y[i].is_finite())
                    .map(|i| format!("{:.2},{:.2}", px(xs[i]), py(y[i])))
                    .collect();
                if points.is_empty() {
                    continue;
                }
                let dash = if yi == 0 { "" } else { " stroke-dasharray=\"4 3\"" };
                let _ = writeln!(
                    out,
                    "<polyline fill=\"none\" stroke=\"{}\" stroke-width=\"1.5\"{dash} points=\"{}\"/>",
                    PALETTE[color % PALETTE.len()],
                    points.join(" ")
                );
                if branch.is_none() {
                    break;
                }
            }
        }
        let _ = writeln!(
            out,
            "<text x=\"{}\" y=\"{}\" fill=\"{}\">{curve_name}={key:.4}</text>",
            WIDTH - MARGIN - 110.0,
            MARGIN + 16.0 * (color + 1) as f64,
            PALETTE[color % PALETTE.len()]
        );
        color += 1;
    }
    axes(&mut out, x_name, &y_names.join(", "), xr, yr);
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::meanfield::SolverOptions;
    use crate::params::make_params;
    use crate::sweep::{figure_data, sweep, FigureSpec};
    use std::f64::consts::PI;

    #[test]
    fn heatmap_has_one_rect_per_cell() {
        let base = make_params(1000.0, 1.2, 0.05, 0.0).unwrap();
        let grid = sweep(&base, &[0.5, 1.2], &[0.5 * PI, PI], &SolverOptions::default()).unwrap();
        let svg = phase_heatmap(&grid);
        assert!(svg.starts_with("<svg"));
        assert!(svg.trim_end().ends_with("</svg>"));
        assert_eq!(svg.matches("<rect").count(), 2 + 4 + 4);
    }

    #[test]
    fn figure_plot_draws_curves() {
        let base = make_params(1000.0, 1.2, 0.05, 0.0).unwrap();
        let spec = FigureSpec {
            kind: FigureKind::CurrentChirality,
            thetas: vec![-1.0, 0.5, 2.0],
            g1_values: vec![1.2],
        };
        let table = figure_data(&base, &spec, &SolverOptions::default()).unwrap();
        let svg = figure_plot(&table);
        assert_eq!(svg.matches("<polyline").count(), 2);
    }
}
