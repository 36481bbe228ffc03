//! Plain-text configuration, CSV tables and run manifests.

use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::meanfield::{MeanFieldSolution, SolverOptions};
use crate::params::SystemParams;
use crate::sweep::{FigureTable, SweepGrid, Value};

/// Values read from a `key=value` file. Missing keys stay `None`.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub omega0: Option<f64>,
    pub g1: Option<f64>,
    pub j: Option<f64>,
    pub theta: Option<f64>,
    pub n_random: Option<usize>,
    pub max_iter: Option<usize>,
    pub tol_residual: Option<f64>,
    pub seed: Option<u64>,
}

impl RunConfig {
    pub fn parse(text: &str) -> Result<Self> {
        let mut cfg = Self::default();
        for (k, raw) in text.lines().enumerate() {
            let line_no = k + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let err = |message: String| Error::Config {
                line: line_no,
                message,
            };
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| err(format!("expected key=value, got {line:?}")))?;
            let (key, value) = (key.trim(), value.trim());
            let float = || {
                value
                    .parse::<f64>()
                    .map_err(|_| err(format!("{key}: {value:?} is not a number")))
            };
            let int = || {
                value
                    .parse::<u64>()
                    .map_err(|_| err(format!("{key}: {value:?} is not a non-negative integer")))
            };
            match key {
                "omega0" => cfg.omega0 = Some(float()?),
                "g1" => cfg.g1 = Some(float()?),
                "j" => cfg.j = Some(float()?),
                "theta" => cfg.theta = Some(float()?),
                "n_random" => cfg.n_random = Some(int()? as usize),
                "max_iter" => cfg.max_iter = Some(int()? as usize),
                "tol_residual" => cfg.tol_residual = Some(float()?),
                "seed" => cfg.seed = Some(int()?),
                other => return Err(err(format!("unknown key {other:?}"))),
            }
        }
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::parse(&std::fs::read_to_string(path)?)
    }

    /// Fields set in `other` replace those in `self`.
    pub fn overlay(&self, other: &RunConfig) -> RunConfig {
        RunConfig {
            omega0: other.omega0.or(self.omega0),
            g1: other.g1.or(self.g1),
            j: other.j.or(self.j),
            theta: other.theta.or(self.theta),
            n_random: other.n_random.or(self.n_random),
            max_iter: other.max_iter.or(self.max_iter),
            tol_residual: other.tol_residual.or(self.tol_residual),
            seed: other.seed.or(self.seed),
        }
    }

    /// Reference parameters `ω₀ = 1000`, `J = 0.05`, `g1 = 1.2`, `θ = π/2`
    /// for anything unset.
    pub fn params(&self) -> Result<SystemParams> {
        Ok(SystemParams::new(
            self.omega0.unwrap_or(1000.0),
            self.g1.unwrap_or(1.2),
            self.j.unwrap_or(0.05),
            self.theta.unwrap_or(std::f64::consts::FRAC_PI_2),
        )?)
    }

    pub fn solver_options(&self) -> Result<SolverOptions> {
        let d = SolverOptions::default();
        let opts = SolverOptions {
            n_random: self.n_random.unwrap_or(d.n_random),
            max_iter: self.max_iter.unwrap_or(d.max_iter),
            tol_residual: self.tol_residual.unwrap_or(d.tol_residual),
            seed: self.seed.unwrap_or(d.seed),
            ..d
        };
        if !(opts.tol_residual > 0.0 && opts.tol_residual.is_finite()) {
            return Err(crate::ParamError::OutOfRange {
                field: "tol_residual",
                value: opts.tol_residual,
                reason: "must be positive",
            }
            .into());
        }
        Ok(opts)
    }

    /// Fully resolved snapshot, one `key=value` per line.
    pub fn to_text(&self) -> Result<String> {
        let p = self.params()?;
        let o = self.solver_options()?;
        Ok(format!(
            "omega0={}\ng1={}\nj={}\ntheta={}\nn_random={}\nmax_iter={}\ntol_residual={}\nseed={}\n",
            p.omega0(),
            p.g1(),
            p.j(),
            p.theta(),
            o.n_random,
            o.max_iter,
            o.tol_residual,
            o.seed
        ))
    }
}

/// C-style `%.12e`: twelve fractional digits and a signed, at least
/// two-digit exponent.
pub fn fmt_sci(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    // -0.0 + 0.0 is +0.0
    let s = format!("{:.12e}", x + 0.0);
    let (mantissa, exp) = s.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    let sign = if exp < 0 { '-' } else { '+' };
    format!("{mantissa}e{sign}{:02}", exp.abs())
}

fn write_rows(path: &Path, header: &str, rows: &[String]) -> Result<()> {
    let mut out = String::with_capacity(64 * (rows.len() + 1));
    out.push_str(header);
    out.push('\n');
    for r in rows {
        out.push_str(r);
        out.push('\n');
    }
    let mut f = std::fs::File::create(path)?;
    f.write_all(out.as_bytes())?;
    Ok(())
}

pub const SOLUTION_HEADER: &str = "site,alpha_re,alpha_im,alpha_scaled_re,alpha_scaled_im";
pub const SUMMARY_HEADER: &str =
    "phase,E_g,eps_1,eps_2,eps_3,current_scaled,chirality_scaled,residual";
pub const PHASE_DIAGRAM_HEADER: &str = "theta,g1,phase,e_g,eps_min,current_scaled,chirality_scaled,alpha1_re,alpha1_im,alpha2_re,alpha2_im,alpha3_re,alpha3_im";

/// Label written for cells whose solve failed; numeric fields are `nan`.
pub const FAILED_LABEL: &str = "FAILED";

/// Amplitudes in the `α₃`-real gauge, raw and scaled by `√η`.
pub fn write_solution_csv(path: &Path, sol: &MeanFieldSolution, params: &SystemParams) -> Result<()> {
    let scale = params.eta().sqrt();
    let fixed = sol.amplitudes.gauge_fixed(1e-12 * scale);
    let rows: Vec<String> = (0..3)
        .map(|n| {
            let a = fixed[n];
            format!(
                "{},{},{},{},{}",
                n + 1,
                fmt_sci(a.re),
                fmt_sci(a.im),
                fmt_sci(a.re / scale),
                fmt_sci(a.im / scale)
            )
        })
        .collect();
    write_rows(path, SOLUTION_HEADER, &rows)
}

pub fn write_summary_csv(path: &Path, sol: &MeanFieldSolution, params: &SystemParams) -> Result<()> {
    let obs = sol.observables(params);
    let e = sol.spectrum.eps;
    let row = format!(
        "{},{},{},{},{},{},{},{}",
        sol.phase,
        fmt_sci(sol.ground_energy),
        fmt_sci(e[0]),
        fmt_sci(e[1]),
        fmt_sci(e[2]),
        fmt_sci(obs.current),
        fmt_sci(obs.chirality),
        fmt_sci(sol.residual)
    );
    write_rows(path, SUMMARY_HEADER, &[row])
}

/// One row per cell, theta-major then `g1`.
pub fn phase_diagram_rows(grid: &SweepGrid) -> Vec<String> {
    grid.cells
        .iter()
        .map(|c| {
            let mut row = format!("{},{},", fmt_sci(c.theta), fmt_sci(c.g1));
            match c.record() {
                Some(r) => {
                    let _ = write!(
                        row,
                        "{},{},{},{},{}",
                        r.phase,
                        fmt_sci(r.ground_energy),
                        fmt_sci(r.eps_min),
                        fmt_sci(r.current),
                        fmt_sci(r.chirality)
                    );
                    for z in r.order_params {
                        let _ = write!(row, ",{},{}", fmt_sci(z.re), fmt_sci(z.im));
                    }
                }
                None => {
                    row.push_str(FAILED_LABEL);
                    row.push_str(&",nan".repeat(10));
                }
            }
            row
        })
        .collect()
}

pub fn write_phase_diagram_csv(path: &Path, grid: &SweepGrid) -> Result<()> {
    write_rows(path, PHASE_DIAGRAM_HEADER, &phase_diagram_rows(grid))
}

pub fn write_figure_csv(path: &Path, table: &FigureTable) -> Result<()> {
    let rows: Vec<String> = table
        .rows
        .iter()
        .map(|r| {
            r.iter()
                .map(|v| match v {
                    Value::Num(x) => fmt_sci(*x),
                    Value::Text(s) => s.clone(),
                })
                .collect::<Vec<_>>()
                .join(",")
        })
        .collect();
    write_rows(path, &table.columns.join(","), &rows)
}

/// Reproducibility record written next to every run's outputs.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub command_line: Vec<String>,
    pub command: String,
    /// Resolved `key=value` configuration.
    pub config: String,
    pub seed: u64,
    pub tool_version: String,
    pub wall_time_seconds: f64,
    pub threads: usize,
    pub outputs: Vec<PathBuf>,
}

impl RunManifest {
    pub fn new(command: &str, config: &RunConfig) -> Result<Self> {
        Ok(Self {
            command_line: std::env::args().collect(),
            command: command.to_string(),
            config: config.to_text()?,
            seed: config.solver_options()?.seed,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            wall_time_seconds: 0.0,
            threads: rayon::current_num_threads(),
            outputs: Vec::new(),
        })
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        let json = serde_json::to_string_pretty(self).map_err(std::io::Error::other)?;
        std::fs::write(path, json + "\n")?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn c_style_scientific() {
        assert_eq!(fmt_sci(1234.0), "1.234000000000e+03");
        assert_eq!(fmt_sci(-0.00125), "-1.250000000000e-03");
        assert_eq!(fmt_sci(0.0), "0.000000000000e+00");
        assert_eq!(fmt_sci(1e-100), "1.000000000000e-100");
        assert_eq!(fmt_sci(f64::NAN), "nan");
        assert_eq!(fmt_sci(-0.0), "0.000000000000e+00");
    }

    #[test]
    fn config_parsing() {
        let text = "# reference point\nomega0 = 1000\ng1=1.2 # trailing\n\ntheta=3.14159\nseed=7\nn_random=4\n";
        let cfg = RunConfig::parse(text).unwrap();
        assert_eq!(cfg.omega0, Some(1000.0));
        assert_eq!(cfg.g1, Some(1.2));
        assert_eq!(cfg.seed, Some(7));
        assert_eq!(cfg.n_random, Some(4));
        assert_eq!(cfg.j, None);
        assert_eq!(cfg.params().unwrap().j(), 0.05);
    }

    #[test]
    fn config_errors_name_the_line() {
        match RunConfig::parse("g1=1\nbogus=3\n") {
            Err(Error::Config { line, .. }) => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
        assert!(RunConfig::parse("g1\n").is_err());
        assert!(RunConfig::parse("seed=-1\n").is_err());
    }

    #[test]
    fn overlay_prefers_the_top_layer() {
        let file = RunConfig::parse("g1=1.0\nj=0.02\n").unwrap();
        let flags = RunConfig {
            g1: Some(1.3),
            ..RunConfig::default()
        };
        let merged = file.overlay(&flags);
        assert_eq!(merged.g1, Some(1.3));
        assert_eq!(merged.j, Some(0.02));
    }

    #[test]
    fn snapshot_round_trips() {
        let cfg = RunConfig::parse("g1=1.1\ntheta=-7\nseed=3\n").unwrap();
        let again = RunConfig::parse(&cfg.to_text().unwrap()).unwrap();
        assert_eq!(again.params().unwrap(), cfg.params().unwrap());
        assert_eq!(again.solver_options().unwrap(), cfg.solver_options().unwrap());
    }
}
