use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};

use jc_trimer::io::{
    fmt_sci, write_figure_csv, write_phase_diagram_csv, write_solution_csv, write_summary_csv,
    RunConfig, RunManifest,
};
use jc_trimer::oracle::{run_checks, ValidationSettings};
use jc_trimer::sweep::{figure_data, linspace, sweep, theta_axis, FigureKind, FigureSpec};
use jc_trimer::{solve, svg, Error};

const EXIT_IO: u8 = 1;
const EXIT_FLAGS: u8 = 2;
const EXIT_SOLVER: u8 = 3;
const EXIT_VALIDATION: u8 = 4;

/// Mean-field phases of a Jaynes-Cummings trimer with complex photon hopping.
///
/// Angles are in radians. Useful values: pi/2 = 1.5707963267948966,
/// 2pi/3 = 2.0943951023931953, pi = 3.141592653589793.
#[derive(Debug, Parser)]
#[command(name = "jctrimer", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    flags: Flags,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Ground state at one parameter point: solution.csv, summary.csv.
    Solve,
    /// Phase diagram over a (theta, g1) grid: phase_diagram.csv.
    Sweep,
    /// Data behind figure 2, 3 or 4: figN.csv.
    Figure,
    /// Oracle cross-checks: validation.csv; exit 4 if any fails.
    Validate,
}

#[derive(Debug, clap::Args)]
struct Flags {
    /// Atomic frequency in units of the cavity frequency.
    #[arg(long, global = true, allow_hyphen_values = true)]
    omega0: Option<f64>,
    /// Scaled coupling g / sqrt(omega0).
    #[arg(long, global = true, allow_hyphen_values = true)]
    g1: Option<f64>,
    /// Hopping strength.
    #[arg(long, global = true, allow_hyphen_values = true)]
    j: Option<f64>,
    /// Hopping phase in radians.
    #[arg(long, global = true, allow_hyphen_values = true)]
    theta: Option<f64>,
    /// g1 grid as a:b:n.
    #[arg(long, global = true, value_parser = parse_range)]
    g1_range: Option<Range>,
    /// theta grid as a:b:n (radians).
    #[arg(long, global = true, value_parser = parse_range, allow_hyphen_values = true)]
    theta_range: Option<Range>,
    /// Figure number: 2, 3 or 4.
    #[arg(long, global = true, value_parser = clap::value_parser!(u32).range(2..=4))]
    fig: Option<u32>,
    /// Output directory.
    #[arg(long, global = true, default_value = ".")]
    out: PathBuf,
    /// Also render an SVG next to the CSV.
    #[arg(long, global = true)]
    svg: bool,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Number of random starts per solve.
    #[arg(long, global = true)]
    restarts: Option<usize>,
    /// Photon cutoff per cavity for exact diagonalization.
    #[arg(long, global = true, default_value_t = 2)]
    nmax: usize,
    /// Restrict an extra exact-diagonalization check to this excitation number.
    #[arg(long, global = true)]
    sector: Option<usize>,
    /// key=value configuration file; flags take precedence.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy)]
struct Range {
    lo: f64,
    hi: f64,
    n: usize,
}

impl Range {
    fn values(self) -> Vec<f64> {
        linspace(self.lo, self.hi, self.n)
    }
}

fn parse_range(s: &str) -> Result<Range, String> {
    let parts: Vec<&str> = s.split(':').collect();
    let [lo, hi, n] = parts[..] else {
        return Err(format!("expected a:b:n, got {s:?}"));
    };
    let num = |v: &str| {
        v.trim()
            .parse::<f64>()
            .ok()
            .filter(|x| x.is_finite())
            .ok_or_else(|| format!("{v:?} is not a finite number"))
    };
    let (lo, hi) = (num(lo)?, num(hi)?);
    let n: usize = n
        .trim()
        .parse()
        .map_err(|_| format!("{n:?} is not a point count"))?;
    if n == 0 {
        return Err("point count must be at least 1".into());
    }
    if hi < lo {
        return Err(format!("range end {hi} is below its start {lo}"));
    }
    Ok(Range { lo, hi, n })
}

/// Error plus the exit code it maps to.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::Param(_)
            | Error::InvalidQuasimomentum(_)
            | Error::InvalidAxis(_)
            | Error::Config { .. }
            | Error::EmptyCutoff
            | Error::DimensionCap { .. } => EXIT_FLAGS,
            Error::Io(_) => EXIT_IO,
            _ => EXIT_SOLVER,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn flag_error(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_FLAGS,
        message: message.into(),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_FLAGS } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("jctrimer: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(raw) = std::env::var("JCTRIMER_THREADS") else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .map_err(|_| flag_error(format!("JCTRIMER_THREADS={raw:?} is not a count")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| flag_error(e.to_string()))
}

fn resolve_config(flags: &Flags) -> Result<RunConfig, Failure> {
    let file = match &flags.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    let from_flags = RunConfig {
        omega0: flags.omega0,
        g1: flags.g1,
        j: flags.j,
        theta: flags.theta,
        n_random: flags.restarts,
        seed: flags.seed,
        ..RunConfig::default()
    };
    Ok(file.overlay(&from_flags))
}

fn run(cli: &Cli) -> Result<(), Failure> {
    configure_threads()?;
    let started = Instant::now();
    let flags = &cli.flags;
    let config = resolve_config(flags)?;
    let params = config.params()?;
    let opts = config.solver_options()?;
    std::fs::create_dir_all(&flags.out).map_err(Error::from)?;

    let name = match cli.command {
        Command::Solve => "solve",
        Command::Sweep => "sweep",
        Command::Figure => "figure",
        Command::Validate => "validate",
    };
    let mut manifest = RunManifest::new(name, &config)?;
    let out = |file: &str| flags.out.join(file);

    // deferred so the manifest and CSV are written before a nonzero exit
    let mut outcome = Ok(());
    match cli.command {
        Command::Solve => {
            let sol = solve(&params, &opts)?;
            let (solution, summary) = (out("solution.csv"), out("summary.csv"));
            write_solution_csv(&solution, &sol, &params)?;
            write_summary_csv(&summary, &sol, &params)?;
            manifest.outputs.extend([solution, summary]);
            let obs = sol.observables(&params);
            println!(
                "{}  E_g={}  current_scaled={}  chirality_scaled={}",
                sol.phase,
                fmt_sci(sol.ground_energy),
                fmt_sci(obs.current),
                fmt_sci(obs.chirality)
            );
        }
        Command::Sweep => {
            let g1_axis = flags
                .g1_range
                .map_or_else(|| linspace(0.8, 1.3, 200), Range::values);
            let theta = flags.theta_range.map_or_else(|| theta_axis(200), Range::values);
            let grid = sweep(&params, &g1_axis, &theta, &opts)?;
            let csv = out("phase_diagram.csv");
            write_phase_diagram_csv(&csv, &grid)?;
            manifest.outputs.push(csv);
            if flags.svg {
                let path = out("phase_diagram.svg");
                write_text(&path, &svg::phase_heatmap(&grid))?;
                manifest.outputs.push(path);
            }
            println!(
                "{} cells, {} failed, phases: {}",
                grid.cells.len(),
                grid.failures(),
                grid.phases_present()
                    .iter()
                    .map(|p| p.as_str())
                    .collect::<Vec<_>>()
                    .join(" ")
            );
            outcome = grid.check_failures().map_err(Failure::from);
        }
        Command::Figure => {
            let number = flags
                .fig
                .ok_or_else(|| flag_error("figure requires --fig 2, 3 or 4"))?;
            let kind = FigureKind::from_number(number)
                .ok_or_else(|| flag_error(format!("no figure {number}")))?;
            let mut spec = FigureSpec::default_for(kind);
            if let Some(r) = flags.theta_range {
                spec.thetas = r.values();
            } else if let (Some(t), false) = (flags.theta, kind == FigureKind::CurrentChirality) {
                spec.thetas = vec![t];
            }
            if let Some(r) = flags.g1_range {
                spec.g1_values = r.values();
            } else if let (Some(g), true) = (flags.g1, kind == FigureKind::CurrentChirality) {
                spec.g1_values = vec![g];
            }
            let table = figure_data(&params, &spec, &opts)?;
            let csv = out(&format!("fig{number}.csv"));
            write_figure_csv(&csv, &table)?;
            manifest.outputs.push(csv);
            if flags.svg {
                let path = out(&format!("fig{number}.svg"));
                write_text(&path, &svg::figure_plot(&table))?;
                manifest.outputs.push(path);
            }
            println!("{} rows", table.rows.len());
        }
        Command::Validate => {
            let settings = ValidationSettings {
                n_max: flags.nmax,
                sector: flags.sector,
                ..ValidationSettings::default()
            };
            let checks = run_checks(&params, &opts, &settings)?;
            let mut text = String::from("check,measured,tolerance,pass\n");
            for c in &checks {
                text += &format!(
                    "{},{},{},{}\n",
                    c.name,
                    fmt_sci(c.measured),
                    fmt_sci(c.tolerance),
                    c.pass
                );
                println!(
                    "{} {:<28} {:.3e} < {:.1e}",
                    if c.pass { "PASS" } else { "FAIL" },
                    c.name,
                    c.measured,
                    c.tolerance
                );
            }
            let path = out("validation.csv");
            write_text(&path, &text)?;
            manifest.outputs.push(path);
            let failed = checks.iter().filter(|c| !c.pass).count();
            if failed > 0 {
                outcome = Err(Failure {
                    code: EXIT_VALIDATION,
                    message: format!("{failed} of {} checks failed", checks.len()),
                });
            }
        }
    }

    manifest.wall_time_seconds = started.elapsed().as_secs_f64();
    manifest.write(&out("manifest.json"))?;
    outcome
}

fn write_text(path: &Path, text: &str) -> Result<(), Failure> {
    std::fs::write(path, text).map_err(|e| Error::from(e).into())
}
