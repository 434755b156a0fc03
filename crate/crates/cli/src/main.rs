//! `rcdistill`: reduction-criterion checks, thresholds and sweeps for
//! depolarized bipartite states.

mod format;
mod plot;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use distill_core::{
    bisection_threshold_oracle, rc_check, sweep_3x3, threshold, DepolarizedState, Method,
    SchmidtVector, StateFile, SweepCell, SweepGrid, ThresholdMethod, ThresholdResult,
    DEFAULT_RC_TOL,
};

use crate::format::sig12;

pub const CSV_HEADER: &str = "theta,phi,a1,a2,a3,p_star,family";

#[derive(Parser)]
#[command(
    name = "rcdistill",
    version,
    about = "Reduction-criterion distillability of depolarized states"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Test whether the reduction criterion detects the state as distillable.
    ///
    /// Exit status: 0 detected, 1 not detected, 2 error.
    Check(CheckArgs),
    /// Minimum p at which the state becomes detectable.
    Threshold(ThresholdArgs),
    /// Sweep the two-qutrit threshold over (theta, phi) and write CSV.
    Sweep(SweepArgs),
    /// Normalize coefficients and write a state file.
    State(StateArgs),
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Source {
    /// Comma-separated Schmidt coefficients; normalized on input.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    coeffs: Option<Vec<f64>>,
    /// JSON state file `{"d": int, "p": float, "a": [float, ...]}`.
    #[arg(long)]
    state: Option<PathBuf>,
}

#[derive(Args)]
struct CheckArgs {
    #[arg(long)]
    d: Option<usize>,
    #[arg(long)]
    p: Option<f64>,
    #[command(flatten)]
    source: Source,
    #[arg(long, value_enum, default_value_t = CheckMethod::Oracle)]
    method: CheckMethod,
    #[arg(long, default_value_t = DEFAULT_RC_TOL)]
    tol: f64,
}

#[derive(Clone, Copy, ValueEnum)]
enum CheckMethod {
    Oracle,
    Charpoly,
    Cubic3x3,
}

impl From<CheckMethod> for Method {
    fn from(m: CheckMethod) -> Self {
        match m {
            CheckMethod::Oracle => Method::Oracle,
            CheckMethod::Charpoly => Method::Charpoly,
            CheckMethod::Cubic3x3 => Method::Cubic3x3,
        }
    }
}

#[derive(Args)]
struct ThresholdArgs {
    #[arg(long)]
    d: Option<usize>,
    #[command(flatten)]
    source: Source,
    #[arg(long, value_enum, default_value_t = ThresholdKind::Generic)]
    method: ThresholdKind,
    /// Emit `{"p_star": float|null, "family": string|null}`.
    #[arg(long)]
    json: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum ThresholdKind {
    Generic,
    Cubic3x3,
    Bisection,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long, default_value_t = 181)]
    theta_steps: usize,
    #[arg(long, default_value_t = 181)]
    phi_steps: usize,
    #[arg(long)]
    out: PathBuf,
    /// Also write a matplotlib script plotting the CSV.
    #[arg(long)]
    plot_script: Option<PathBuf>,
    /// Worker threads; defaults to the number of CPUs.
    #[arg(long)]
    jobs: Option<usize>,
}

#[derive(Args)]
struct StateArgs {
    #[arg(long)]
    d: Option<usize>,
    #[arg(long)]
    p: Option<f64>,
    #[command(flatten)]
    source: Source,
    #[arg(long)]
    out: PathBuf,
}

fn load_schmidt(d: Option<usize>, source: &Source) -> Result<(SchmidtVector, Option<f64>)> {
    match (&source.coeffs, &source.state) {
        (Some(coeffs), None) => {
            let Some(d) = d else {
                bail!("--d is required with --coeffs");
            };
            if coeffs.len() != d {
                bail!("--coeffs has {} values but --d is {d}", coeffs.len());
            }
            Ok((SchmidtVector::normalized(coeffs.clone())?, None))
        }
        (None, Some(path)) => {
            let text = fs::read_to_string(path)
                .with_context(|| format!("reading state file {}", path.display()))?;
            let file = StateFile::from_json(&text)?;
            if let Some(d) = d {
                if d != file.d {
                    bail!("--d is {d} but the state file has d = {}", file.d);
                }
            }
            Ok((file.schmidt()?, file.p))
        }
        _ => bail!("exactly one of --coeffs and --state is required"),
    }
}

fn run_check(args: &CheckArgs) -> Result<ExitCode> {
    let (schmidt, file_p) = load_schmidt(args.d, &args.source)?;
    let Some(p) = args.p.or(file_p) else {
        bail!("--p is required");
    };
    let state = DepolarizedState::new(schmidt, p)?;
    let verdict = rc_check(&state, args.tol, args.method.into())?;
    println!("method: {}", verdict.method);
    println!("min_eigenvalue: {}", sig12(verdict.min_eigenvalue));
    if verdict.distillable_by_rc {
        println!("verdict: distillable by RC");
        Ok(ExitCode::SUCCESS)
    } else {
        println!("verdict: not detected by RC");
        Ok(ExitCode::from(1))
    }
}

fn run_threshold(args: &ThresholdArgs) -> Result<ExitCode> {
    let (schmidt, _) = load_schmidt(args.d, &args.source)?;
    let result: ThresholdResult = match args.method {
        ThresholdKind::Generic => threshold(&schmidt, ThresholdMethod::Generic)?,
        ThresholdKind::Cubic3x3 => threshold(&schmidt, ThresholdMethod::Cubic3x3)?,
        ThresholdKind::Bisection => bisection_threshold_oracle(&schmidt)?,
    };
    if args.json {
        let value = serde_json::json!({
            "p_star": result.p_star,
            "family": result.family.map(|f| f.as_str()),
        });
        println!("{value}");
    } else {
        match result.p_star {
            Some(p) => println!("{}", sig12(p)),
            None => println!("none"),
        }
    }
    Ok(ExitCode::SUCCESS)
}

/// One CSV line (without the newline) per sweep cell.
fn csv_row(cell: &SweepCell) -> String {
    let [a1, a2, a3] = cell.a;
    format!(
        "{},{},{},{},{},{},{}",
        sig12(cell.theta),
        sig12(cell.phi),
        sig12(a1),
        sig12(a2),
        sig12(a3),
        cell.p_star.map(sig12).unwrap_or_default(),
        cell.family.map(|f| f.as_str()).unwrap_or_default(),
    )
}

fn render_csv(cells: &[SweepCell]) -> String {
    let mut out = String::with_capacity(64 * (cells.len() + 1));
    out.push_str(CSV_HEADER);
    out.push('\n');
    for cell in cells {
        out.push_str(&csv_row(cell));
        out.push('\n');
    }
    out
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).with_context(|| format!("writing {}", path.display()))
}

fn run_sweep(args: &SweepArgs) -> Result<ExitCode> {
    let grid = SweepGrid::new(args.theta_steps, args.phi_steps);
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(jobs) = args.jobs {
        if jobs == 0 {
            bail!("--jobs must be at least 1");
        }
        pool = pool.num_threads(jobs);
    }
    let pool = pool.build().context("starting worker threads")?;
    let cells = pool.install(|| sweep_3x3(&grid))?;
    write_file(&args.out, &render_csv(&cells))?;
    if let Some(script) = &args.plot_script {
        let csv = args.out.to_string_lossy();
        write_file(
            script,
            &plot::plot_script(&csv, args.theta_steps, args.phi_steps),
        )?;
    }
    let populated = cells.iter().filter_map(|c| c.p_star);
    let min = populated.fold(f64::INFINITY, f64::min);
    if min.is_finite() {
        eprintln!("{} cells, minimum p_star {}", cells.len(), sig12(min));
    } else {
        eprintln!("{} cells, no thresholds", cells.len());
    }
    Ok(ExitCode::SUCCESS)
}

fn run_state(args: &StateArgs) -> Result<ExitCode> {
    let (schmidt, file_p) = load_schmidt(args.d, &args.source)?;
    let p = args.p.or(file_p);
    if let Some(p) = p {
        DepolarizedState::new(schmidt.clone(), p)?;
    }
    let mut text = StateFile::from_state(&schmidt, p).to_json();
    text.push('\n');
    write_file(&args.out, &text)?;
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Check(args) => run_check(args),
        Command::Threshold(args) => run_threshold(args),
        Command::Sweep(args) => run_sweep(args),
        Command::State(args) => run_state(args),
    };
    match outcome {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use distill_core::RootFamily;

    #[test]
    fn csv_row_layout() {
        let cell = SweepCell {
            theta: 0.0,
            phi: 0.0,
            a: [0.0, 0.0, 1.0],
            p_star: None,
            family: None,
        };
        assert_eq!(csv_row(&cell), "0,0,0,0,1,,");
        let cell = SweepCell {
            p_star: Some(0.25),
            family: Some(RootFamily::Lambda1),
            ..cell
        };
        assert_eq!(csv_row(&cell), "0,0,0,0,1,0.25,lambda1");
        assert!(render_csv(&[cell]).starts_with("theta,phi,a1,a2,a3,p_star,family\n"));
    }

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
