//! Parameter sweeps over `(g1, θ)`, phase-boundary location and the
//! one-dimensional cuts behind the spectrum, order-parameter and current
//! figures.
//!
//! Cells are solved independently (no warm starts), each with its own seed
//! derived from the base seed and the cell index, so results do not depend
//! on the number of worker threads.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::meanfield::{solve, MeanFieldSolution, PhaseLabel, SolverOptions};
use crate::params::{Amplitudes, SystemParams};

/// Quasiparticle energies at or below this count as zero modes when
/// reporting the lowest nonzero branch.
pub const GAP_THRESHOLD: f64 = 1e-6;

/// Largest tolerated fraction of failed cells.
pub const MAX_FAILURE_FRACTION: f64 = 0.01;

/// `n` evenly spaced points from `a` to `b` inclusive; `[a]` when `n == 1`.
pub fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    match n {
        0 => Vec::new(),
        1 => vec![a],
        _ => (0..n)
            .map(|k| a + (b - a) * k as f64 / (n - 1) as f64)
            .collect(),
    }
}

/// `n` evenly spaced angles covering `(−π, π]`, ending exactly at `π`.
pub fn theta_axis(n: usize) -> Vec<f64> {
    (0..n)
        .map(|k| {
            if k + 1 == n {
                PI
            } else {
                -PI + 2.0 * PI * (k + 1) as f64 / n as f64
            }
        })
        .collect()
}

/// Per-point summary of a solved cell.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellRecord {
    pub phase: PhaseLabel,
    pub ground_energy: f64,
    pub classical_energy: f64,
    pub eps: [f64; 3],
    pub eps_min: f64,
    /// Lowest quasiparticle energy above [`GAP_THRESHOLD`].
    pub eps_gap: Option<f64>,
    pub current: f64,
    pub chirality: f64,
    /// `α_n/√η` in the `α₃`-real gauge.
    pub order_params: [Complex64; 3],
    pub amplitudes: Amplitudes,
    pub residual: f64,
}

impl CellRecord {
    pub fn from_solution(sol: &MeanFieldSolution, params: &SystemParams) -> Self {
        let obs = sol.observables(params);
        Self {
            phase: sol.phase,
            ground_energy: sol.ground_energy,
            classical_energy: sol.classical_energy,
            eps: sol.spectrum.eps,
            eps_min: sol.spectrum.eps_min(),
            eps_gap: sol.spectrum.lowest_above(GAP_THRESHOLD),
            current: obs.current,
            chirality: obs.chirality,
            order_params: obs.order_params,
            amplitudes: sol.amplitudes,
            residual: sol.residual,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepCell {
    pub theta: f64,
    pub g1: f64,
    /// The solved cell, or the error message of a failed one.
    pub outcome: Result<CellRecord, String>,
}

impl SweepCell {
    pub fn record(&self) -> Option<&CellRecord> {
        self.outcome.as_ref().ok()
    }

    pub fn phase(&self) -> Option<PhaseLabel> {
        self.record().map(|r| r.phase)
    }
}

/// Cells stored theta-major: index `i_theta * g1_axis.len() + i_g1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepGrid {
    pub g1_axis: Vec<f64>,
    pub theta_axis: Vec<f64>,
    pub cells: Vec<SweepCell>,
}

impl SweepGrid {
    pub fn cell(&self, i_theta: usize, i_g1: usize) -> &SweepCell {
        &self.cells[i_theta * self.g1_axis.len() + i_g1]
    }

    pub fn failures(&self) -> usize {
        self.cells.iter().filter(|c| c.outcome.is_err()).count()
    }

    /// Distinct labels present, in [`PhaseLabel::ALL`] order.
    pub fn phases_present(&self) -> Vec<PhaseLabel> {
        PhaseLabel::ALL
            .into_iter()
            .filter(|p| self.cells.iter().any(|c| c.phase() == Some(*p)))
            .collect()
    }

    /// Errors when more than 1% of the cells failed.
    pub fn check_failures(&self) -> Result<()> {
        let failed = self.failures();
        let total = self.cells.len();
        if failed as f64 > MAX_FAILURE_FRACTION * total as f64 {
            Err(Error::SweepFailed { failed, total })
        } else {
            Ok(())
        }
    }
}

fn check_axis(name: &str, axis: &[f64]) -> Result<()> {
    if axis.is_empty() {
        return Err(Error::InvalidAxis(format!("{name} axis is empty")));
    }
    if axis.iter().any(|v| !v.is_finite()) {
        return Err(Error::InvalidAxis(format!("{name} axis has non-finite entries")));
    }
    if axis.windows(2).any(|w| w[1] < w[0]) {
        return Err(Error::InvalidAxis(format!("{name} axis is not ascending")));
    }
    Ok(())
}

/// Seed of cell `index`, decorrelated from its neighbours.
pub fn cell_seed(base: u64, index: usize) -> u64 {
    let mut z = base ^ (index as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn solve_cell(base: &SystemParams, g1: f64, theta: f64, opts: &SolverOptions) -> SweepCell {
    let outcome = SystemParams::new(base.omega0(), g1, base.j(), theta)
        .map_err(Error::from)
        .and_then(|p| solve(&p, opts).map(|s| CellRecord::from_solution(&s, &p)))
        .map_err(|e| e.to_string());
    SweepCell {
        theta,
        g1,
        outcome,
    }
}

/// Solves every cell without applying the failure threshold.
pub fn sweep_cells(
    base: &SystemParams,
    g1_axis: &[f64],
    theta_axis: &[f64],
    opts: &SolverOptions,
) -> Result<SweepGrid> {
    check_axis("g1", g1_axis)?;
    check_axis("theta", theta_axis)?;
    let n_g1 = g1_axis.len();
    let cells = (0..theta_axis.len() * n_g1)
        .into_par_iter()
        .map(|index| {
            let cell_opts = SolverOptions {
                seed: cell_seed(opts.seed, index),
                ..opts.clone()
            };
            solve_cell(base, g1_axis[index % n_g1], theta_axis[index / n_g1], &cell_opts)
        })
        .collect();
    Ok(SweepGrid {
        g1_axis: g1_axis.to_vec(),
        theta_axis: theta_axis.to_vec(),
        cells,
    })
}

/// Classified grid; fails only when more than 1% of the cells fail.
pub fn sweep(
    base: &SystemParams,
    g1_axis: &[f64],
    theta_axis: &[f64],
    opts: &SolverOptions,
) -> Result<SweepGrid> {
    let grid = sweep_cells(base, g1_axis, theta_axis, opts)?;
    grid.check_failures()?;
    Ok(grid)
}

/// Which parameter a boundary scan varies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ScanAxis {
    /// Vary `θ` at fixed `g1`; locates the USP boundary.
    Theta,
    /// Vary `g1` at fixed `θ`; locates the normal-phase boundary.
    G1,
}

/// Bisects the window `[lo, hi]` for the point where the ground-state label
/// changes (USP vs. other along `θ`, NP vs. other along `g1`).
pub fn boundary_scan(
    base: &SystemParams,
    axis: ScanAxis,
    fixed: f64,
    window: (f64, f64),
    tol: f64,
    opts: &SolverOptions,
) -> Result<f64> {
    let (mut lo, mut hi) = window;
    if !(lo.is_finite() && hi.is_finite() && lo < hi && tol > 0.0) {
        return Err(Error::InvalidAxis(format!(
            "scan window [{lo}, {hi}] with tolerance {tol}"
        )));
    }
    let side = |x: f64| -> Result<bool> {
        let p = match axis {
            ScanAxis::Theta => SystemParams::new(base.omega0(), fixed, base.j(), x)?,
            ScanAxis::G1 => SystemParams::new(base.omega0(), x, base.j(), fixed)?,
        };
        let phase = solve(&p, opts)?.phase;
        Ok(match axis {
            ScanAxis::Theta => phase == PhaseLabel::USP,
            ScanAxis::G1 => phase == PhaseLabel::NP,
        })
    };
    let at_lo = side(lo)?;
    if side(hi)? == at_lo {
        return Err(Error::NoCrossing { lo, hi });
    }
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if side(mid)? == at_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// The three one-dimensional figure data sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum FigureKind {
    /// Quasiparticle energies vs `g1` at several `θ`.
    Spectrum,
    /// Order parameters vs `g1` at several `θ`.
    OrderParameters,
    /// Current and chirality vs `θ` at fixed `g1`.
    CurrentChirality,
}

impl FigureKind {
    /// Maps the figure numbers 2, 3 and 4.
    pub fn from_number(n: u32) -> Option<Self> {
        match n {
            2 => Some(Self::Spectrum),
            3 => Some(Self::OrderParameters),
            4 => Some(Self::CurrentChirality),
            _ => None,
        }
    }

    pub fn number(self) -> u32 {
        match self {
            Self::Spectrum => 2,
            Self::OrderParameters => 3,
            Self::CurrentChirality => 4,
        }
    }
}

/// Axes of a figure cut. For the `g1` cuts `thetas` lists the curves; for
/// the current cut `g1_values` lists the curves and `thetas` is the x-axis.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FigureSpec {
    pub kind: FigureKind,
    pub thetas: Vec<f64>,
    pub g1_values: Vec<f64>,
}

impl FigureSpec {
    /// 400-point cuts: `g1 ∈ [0.8, 1.3]` at `θ ∈ {0, π/2, π}`, or
    /// `θ ∈ (−π, π]` at `g1 = 1.2`.
    pub fn default_for(kind: FigureKind) -> Self {
        match kind {
            FigureKind::Spectrum | FigureKind::OrderParameters => Self {
                kind,
                thetas: vec![0.0, 0.5 * PI, PI],
                g1_values: linspace(0.8, 1.3, 400),
            },
            FigureKind::CurrentChirality => Self {
                kind,
                thetas: theta_axis(400),
                g1_values: vec![1.2],
            },
        }
    }

    pub fn columns(&self) -> &'static [&'static str] {
        match self.kind {
            FigureKind::Spectrum => &[
                "theta", "g1", "phase", "eps_min", "eps_gap", "eps_1", "eps_2", "eps_3",
            ],
            FigureKind::OrderParameters => &[
                "theta", "g1", "branch", "phase", "alpha1_re", "alpha1_im", "alpha2_re",
                "alpha2_im", "alpha3_re", "alpha3_im",
            ],
            FigureKind::CurrentChirality => {
                &["theta", "g1", "phase", "current_scaled", "chirality_scaled"]
            }
        }
    }
}

/// One table entry.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Value {
    Num(f64),
    Text(String),
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FigureTable {
    pub kind: FigureKind,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Value>>,
}

impl FigureTable {
    /// Numeric column by name; text entries read as `NaN`.
    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let k = self.columns.iter().position(|c| c == name)?;
        Some(
            self.rows
                .iter()
                .map(|r| match &r[k] {
                    Value::Num(v) => *v,
                    Value::Text(_) => f64::NAN,
                })
                .collect(),
        )
    }

    pub fn text_column(&self, name: &str) -> Option<Vec<String>> {
        let k = self.columns.iter().position(|c| c == name)?;
        Some(
            self.rows
                .iter()
                .map(|r| match &r[k] {
                    Value::Num(v) => v.to_string(),
                    Value::Text(s) => s.clone(),
                })
                .collect(),
        )
    }
}

/// Rows are ordered by curve, then along the x-axis. Any failed point fails
/// the whole table.
pub fn figure_data(
    base: &SystemParams,
    spec: &FigureSpec,
    opts: &SolverOptions,
) -> Result<FigureTable> {
    check_axis("g1", &spec.g1_values).or_else(|e| match spec.kind {
        FigureKind::CurrentChirality => Ok(()),
        _ => Err(e),
    })?;
    let points: Vec<(f64, f64)> = match spec.kind {
        FigureKind::CurrentChirality => spec
            .g1_values
            .iter()
            .flat_map(|&g1| spec.thetas.iter().map(move |&t| (t, g1)))
            .collect(),
        _ => spec
            .thetas
            .iter()
            .flat_map(|&t| spec.g1_values.iter().map(move |&g1| (t, g1)))
            .collect(),
    };
    let solved: Vec<Result<(f64, f64, CellRecord)>> = points
        .par_iter()
        .enumerate()
        .map(|(index, &(theta, g1))| {
            let p = SystemParams::new(base.omega0(), g1, base.j(), theta)?;
            let cell_opts = SolverOptions {
                seed: cell_seed(opts.seed, index),
                ..opts.clone()
            };
            let sol = solve(&p, &cell_opts)?;
            Ok((theta, g1, CellRecord::from_solution(&sol, &p)))
        })
        .collect();

    let mut rows = Vec::with_capacity(points.len());
    for item in solved {
        let (theta, g1, r) = item?;
        let head = [Value::Num(theta), Value::Num(g1)];
        let phase = Value::Text(r.phase.to_string());
        match spec.kind {
            FigureKind::Spectrum => {
                let mut row = head.to_vec();
                row.push(phase);
                row.push(Value::Num(r.eps_min));
                row.push(Value::Num(r.eps_gap.unwrap_or(f64::NAN)));
                row.extend(r.eps.iter().map(|&e| Value::Num(e)));
                rows.push(row);
            }
            FigureKind::OrderParameters => {
                for branch in [1.0, -1.0] {
                    let mut row = head.to_vec();
                    row.push(Value::Num(branch));
                    row.push(phase.clone());
                    for z in r.order_params {
                        row.push(Value::Num(branch * z.re + 0.0));
                        row.push(Value::Num(branch * z.im + 0.0));
                    }
                    rows.push(row);
                }
            }
            FigureKind::CurrentChirality => {
                let mut row = head.to_vec();
                row.push(phase);
                row.push(Value::Num(r.current));
                row.push(Value::Num(r.chirality));
                rows.push(row);
            }
        }
    }
    Ok(FigureTable {
        kind: spec.kind,
        columns: spec.columns().iter().map(|c| c.to_string()).collect(),
        rows,
    })
}
