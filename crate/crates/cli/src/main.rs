//! `ricci-liouville`: construct, verify, classify and mesh special Liouville
//! metrics satisfying the Ricci condition.
//!
//! Exit codes: 0 success, 1 verification negative, 2 usage or parameter
//! error, 3 numerical failure.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ricci_liouville::pmc::subfamily_b;
use ricci_liouville::{Error, Execution};
use serde::Serialize;

pub const EXIT_NEGATIVE: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_NUMERICAL: u8 = 3;

#[derive(Debug, Parser)]
#[command(name = "ricci-liouville", version, about, propagate_version = true)]
pub struct Cli {
    /// Run every computation on the calling thread.
    #[arg(long, global = true)]
    sequential: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct MetricArgs {
    /// Half the mean-curvature norm; defaults to 1/sqrt(6).
    #[arg(long, default_value_t = subfamily_b())]
    pub b: f64,
    #[arg(long)]
    pub c1: f64,
    #[arg(long)]
    pub c2: f64,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct DeriveArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub metric: MetricArgs,
    /// Also write `constants.json` and a manifest here.
    #[arg(long)]
    #[serde(skip)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct VerifyArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub metric: MetricArgs,
    #[arg(long)]
    pub u_lo: f64,
    #[arg(long)]
    pub u_hi: f64,
    /// Coarsest grid spacing; each further level halves it.
    #[arg(long)]
    pub h: f64,
    /// Width of the v strip in cells of size h; defaults to a square domain.
    #[arg(long)]
    pub v_cells: Option<usize>,
    #[arg(long, default_value_t = 3)]
    pub levels: usize,
    #[arg(long, default_value = ".")]
    #[serde(skip)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MeshFormat {
    Obj,
    Ply,
    Both,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct MeshArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub metric: MetricArgs,
    #[arg(long)]
    pub u_lo: f64,
    #[arg(long)]
    pub u_hi: f64,
    /// Profile samples along u.
    #[arg(long, default_value_t = 201)]
    pub nu: usize,
    /// Mesh columns around the axis.
    #[arg(long, default_value_t = 64)]
    pub nv: usize,
    #[arg(long, default_value_t = 0.0)]
    pub v_lo: f64,
    #[arg(long, default_value_t = std::f64::consts::TAU)]
    pub v_hi: f64,
    #[arg(long, value_enum, default_value_t = MeshFormat::Obj)]
    pub format: MeshFormat,
    /// Absolute quadrature tolerance for the profile integrals.
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
    /// Samples of the arc-length profile written alongside the mesh.
    #[arg(long, default_value_t = 4001)]
    pub arc_samples: usize,
    #[arg(long, default_value = ".")]
    #[serde(skip)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ClassifyArgs {
    /// CSV with columns s, x, y (arc-length parametrized profile).
    pub profile: PathBuf,
    #[arg(long, default_value_t = subfamily_b())]
    pub b: f64,
    /// Target spacing of the resampled conformal factor.
    #[arg(long, default_value_t = 0.01)]
    pub h: f64,
    #[arg(long, default_value_t = 3)]
    pub levels: usize,
    #[arg(long)]
    #[serde(skip)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct SweepArgs {
    /// Values of b: `a,b,c`, `lo:hi:n` or empty. Default `1/sqrt(6),0.5,1`.
    #[arg(long)]
    pub b: Option<String>,
    #[arg(long, default_value = "0.25,1,4")]
    pub c1: String,
    #[arg(long, default_value = "-2,0,3")]
    pub c2: String,
    #[arg(long, default_value_t = 0.02)]
    pub h: f64,
    #[arg(long, default_value_t = 3)]
    pub levels: usize,
    /// Grid half-width as a fraction of each metric's domain half-width.
    #[arg(long, default_value_t = 0.5)]
    pub fraction: f64,
    /// Fixed u range instead of the per-metric fraction (both or neither).
    #[arg(long, requires = "u_hi")]
    pub u_lo: Option<f64>,
    #[arg(long, requires = "u_lo")]
    pub u_hi: Option<f64>,
    #[arg(long, default_value_t = 4)]
    pub v_cells: usize,
    #[arg(long, default_value = ".")]
    #[serde(skip)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct PmcArgs {
    #[arg(long)]
    pub c1: f64,
    #[arg(long)]
    pub u_lo: f64,
    #[arg(long)]
    pub u_hi: f64,
    #[arg(long, default_value_t = 401)]
    pub n: usize,
    #[arg(long)]
    #[serde(skip)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct ReplayArgs {
    /// Manifest of an earlier run.
    pub manifest: PathBuf,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Print the derived constants (s, k, lambda_+, quarter period, u_max) as JSON.
    #[command(allow_negative_numbers = true)]
    Derive(DeriveArgs),
    /// Finite-difference check of the Ricci condition with a convergence study.
    #[command(allow_negative_numbers = true)]
    Verify(VerifyArgs),
    /// Surface of revolution realizing the metric, as OBJ and/or PLY.
    #[command(allow_negative_numbers = true)]
    Mesh(MeshArgs),
    /// Decide whether a profile curve's metric belongs to the family.
    #[command(allow_negative_numbers = true)]
    Classify(ClassifyArgs),
    /// Convergence study over a grid of parameters, as CSV.
    #[command(allow_negative_numbers = true)]
    Sweep(SweepArgs),
    /// Report on a member of the b = 1/sqrt(6) subfamily.
    #[command(allow_negative_numbers = true)]
    Pmc(PmcArgs),
    /// Re-run the command recorded in a manifest into a new directory.
    Replay(ReplayArgs),
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Derive(_) => "derive",
            Command::Verify(_) => "verify",
            Command::Mesh(_) => "mesh",
            Command::Classify(_) => "classify",
            Command::Sweep(_) => "sweep",
            Command::Pmc(_) => "pmc",
            Command::Replay(_) => "replay",
        }
    }

    fn set_out(&mut self, dir: PathBuf) {
        match self {
            Command::Derive(a) => a.out = Some(dir),
            Command::Verify(a) => a.out = dir,
            Command::Mesh(a) => a.out = dir,
            Command::Classify(a) => a.out = Some(dir),
            Command::Sweep(a) => a.out = dir,
            Command::Pmc(a) => a.out = Some(dir),
            Command::Replay(a) => a.out = dir,
        }
    }
}

/// Outcome of a command that ran to completion.
pub enum Outcome {
    Positive,
    Negative,
}

pub fn exit_code(e: &Error) -> u8 {
    if e.is_numerical() {
        EXIT_NUMERICAL
    } else {
        EXIT_USAGE
    }
}

/// Command-line arguments without the program name and any `--out` flag.
fn recorded_argv(args: &[String]) -> Vec<String> {
    let mut out = Vec::with_capacity(args.len());
    let mut skip = false;
    for a in args {
        if skip {
            skip = false;
        } else if a == "--out" {
            skip = true;
        } else if !a.starts_with("--out=") {
            out.push(a.clone());
        }
    }
    out
}

fn run(cli: Cli, argv: Vec<String>) -> Result<Outcome, (u8, String)> {
    let exec = if cli.sequential {
        Execution::Sequential
    } else {
        Execution::Parallel
    };
    let err = |e: Error| (exit_code(&e), e.to_string());
    match cli.command {
        Command::Replay(r) => {
            let text = std::fs::read_to_string(&r.manifest).map_err(|e| (EXIT_USAGE, format!("{}: {e}", r.manifest.display())))?;
            let manifest: serde_json::Value =
                serde_json::from_str(&text).map_err(|e| (EXIT_USAGE, format!("{}: {e}", r.manifest.display())))?;
            let recorded: Vec<String> = manifest["argv"]
                .as_array()
                .and_then(|a| a.iter().map(|v| v.as_str().map(String::from)).collect())
                .ok_or_else(|| (EXIT_USAGE, "manifest has no argv list".to_string()))?;
            let mut inner = Cli::try_parse_from(std::iter::once("ricci-liouville".to_string()).chain(recorded.clone()))
                .map_err(|e| (EXIT_USAGE, e.to_string()))?;
            if matches!(inner.command, Command::Replay(_)) {
                return Err((EXIT_USAGE, "a manifest cannot replay another replay".into()));
            }
            inner.command.set_out(r.out);
            run(inner, recorded)
        }
        command => commands::dispatch(command, exec, argv).map_err(err),
    }
}

#[cfg(feature = "parallel")]
fn configure_threads() -> Result<(), String> {
    let Ok(value) = std::env::var("RICCI_LIOUVILLE_THREADS") else {
        return Ok(());
    };
    let n: usize = value
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| format!("RICCI_LIOUVILLE_THREADS must be a positive integer (got '{value}')"))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| e.to_string())
}

#[cfg(not(feature = "parallel"))]
fn configure_threads() -> Result<(), String> {
    Ok(())
}

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Err(msg) = configure_threads() {
        eprintln!("error: {msg}");
        return ExitCode::from(EXIT_USAGE);
    }
    match run(cli, recorded_argv(&args)) {
        Ok(Outcome::Positive) => ExitCode::SUCCESS,
        Ok(Outcome::Negative) => ExitCode::from(EXIT_NEGATIVE),
        Err((code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
