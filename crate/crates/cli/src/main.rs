//! fracspec: finite element spectra of the nonsymmetric fractional
//! elliptic operator on an interval, exported as plot-ready data.

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Result;
use clap::{Args, Parser, Subcommand};

use fracspec::commands;
use fracspec::config::{Format, ProblemArgs, SweepRange};

#[derive(Parser)]
#[command(
    name = "fracspec",
    version,
    about = "Spectral solver for the fractional elliptic eigenproblem on an interval"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct OutputArgs {
    /// Output format for data files
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Seed for the randomized validation fixtures
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Solve one eigenproblem and export the sorted spectrum + report
    Solve {
        #[command(flatten)]
        problem: ProblemArgs,
        /// Export only the first COUNT eigenpairs
        #[arg(long)]
        count: Option<usize>,
        /// Spectrum output path (report lands next to it)
        #[arg(long, default_value = "spectrum.csv")]
        out: PathBuf,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Sweep a grid of (alpha, beta) pairs and export one row per point
    Sweep {
        /// Alpha range lo:hi:steps; without --beta-range or --sum-fixed
        /// the sweep runs the diagonal beta = alpha
        #[arg(long)]
        alpha_range: Option<String>,
        /// Beta range lo:hi:steps (Cartesian grid with --alpha-range)
        #[arg(long)]
        beta_range: Option<String>,
        /// Fix alpha + beta = SUM and sweep alpha
        #[arg(long)]
        sum_fixed: Option<f64>,
        /// Number of uniform elements
        #[arg(long, default_value_t = 200)]
        n: usize,
        /// Left endpoint
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        a: f64,
        /// Right endpoint
        #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
        b: f64,
        #[arg(long, default_value = "sweep.csv")]
        out: PathBuf,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Export nodal eigenfunction traces, one file per index
    Eigenfunction {
        #[command(flatten)]
        problem: ProblemArgs,
        /// Comma-separated 1-based eigenpair indices, e.g. 1,2,11
        #[arg(long, value_delimiter = ',')]
        indices: Option<Vec<usize>>,
        /// Export indices 1..=COUNT when --indices is absent
        #[arg(long, default_value_t = 4)]
        count: usize,
        #[arg(long, default_value = "eigenfunction.csv")]
        out: PathBuf,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Run the full validation suite; exit code 0 iff every criterion passes
    Validate {
        #[arg(long, default_value = "validation.json")]
        out: PathBuf,
        #[command(flatten)]
        output: OutputArgs,
        /// Relative perturbation of a stiffness entry (failure-injection
        /// fixture for testing the gate itself)
        #[arg(long, hide = true, default_value_t = 0.0)]
        perturb_stiffness: f64,
    },
}

fn configure_threads() {
    if let Ok(text) = std::env::var("FRACSPEC_THREADS") {
        if let Ok(n) = text.trim().parse::<usize>() {
            if n > 0 {
                let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
            }
        }
    }
}

fn run() -> Result<bool> {
    configure_threads();
    let cli = Cli::parse();
    match cli.command {
        Command::Solve {
            problem,
            count,
            out,
            output,
        } => {
            commands::cmd_solve(&problem, count, &out, output.format)?;
            Ok(true)
        }
        Command::Sweep {
            alpha_range,
            beta_range,
            sum_fixed,
            n,
            a,
            b,
            out,
            output,
        } => {
            let spec = commands::SweepSpec {
                alpha_range: alpha_range.as_deref().map(SweepRange::parse).transpose()?,
                beta_range: beta_range.as_deref().map(SweepRange::parse).transpose()?,
                sum_fixed,
            };
            commands::cmd_sweep(&spec, n, a, b, &out, output.format)?;
            Ok(true)
        }
        Command::Eigenfunction {
            problem,
            indices,
            count,
            out,
            output,
        } => {
            let indices = indices.unwrap_or_else(|| (1..=count).collect());
            commands::cmd_eigenfunction(&problem, &indices, &out, output.format)?;
            Ok(true)
        }
        Command::Validate {
            out,
            output,
            perturb_stiffness,
        } => commands::cmd_validate(output.seed, perturb_stiffness, &out),
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
