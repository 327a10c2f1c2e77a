use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use faulty_grover_cli::error::CliError;
use faulty_grover_cli::experiments::{self, RunOutcome, SweepConfig};
use faulty_grover_cli::grid::{parse_float_grid, parse_usize_grid, FloatGrid, UsizeGrid};

/// Simulator and bound-verification toolkit for Grover search with one
/// faulty marked element.
#[derive(Parser)]
#[command(name = "faulty-grover", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Probability curves from the reduced density evolution
    Simulate(SweepArgs),
    /// Marked probability at the prolonged (1.25x / 1.34x) measurement times
    Theorem1(SweepArgs),
    /// Convergence toward the equal-thirds limiting state
    Limit(SweepArgs),
    /// Spherical-trigonometry bound reports (no sweep parameters)
    Bounds(OutputArgs),
    /// Seeded Monte Carlo trajectories next to the exact values
    Montecarlo(SweepArgs),
}

#[derive(Args)]
struct SweepArgs {
    /// Item counts: comma list ("32,64") or range "lo:hi:step"
    #[arg(long, value_parser = parse_usize_grid)]
    n: UsizeGrid,
    /// Marked counts (the last marked item is the faulty one)
    #[arg(long, value_parser = parse_usize_grid)]
    k: UsizeGrid,
    /// Fault probabilities: comma list or range "lo:hi:step"
    #[arg(long, value_parser = parse_float_grid)]
    p: FloatGrid,
    /// Steps to simulate (simulate: curve length; montecarlo: the measured t)
    #[arg(long = "t-max")]
    t_max: Option<usize>,
    /// Base RNG seed (required by montecarlo)
    #[arg(long)]
    seed: Option<u64>,
    /// Trajectories per grid point
    #[arg(long, default_value_t = 10_000)]
    samples: usize,
    /// Use exact fault-word enumeration (merging branches closer than this
    /// tolerance) as the montecarlo reference instead of the density path
    #[arg(long = "merge-tol")]
    merge_tol: Option<f64>,
    /// Shadow every density instance with n <= 32 by the dense-matrix oracle
    /// and append a max-deviation column
    #[arg(long = "oracle-check")]
    oracle_check: bool,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct OutputArgs {
    /// Output path (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Exit with code 3 if any emitted assertion row fails
    #[arg(long)]
    strict: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

impl SweepArgs {
    fn to_config(&self) -> SweepConfig {
        SweepConfig {
            ns: self.n.0.clone(),
            ks: self.k.0.clone(),
            ps: self.p.0.clone(),
            t_max: self.t_max,
            seed: self.seed,
            samples: self.samples,
            merge_tol: self.merge_tol,
            oracle_check: self.oracle_check,
        }
    }
}

fn write_outcome(outcome: &RunOutcome, output: &OutputArgs) -> Result<(), CliError> {
    let render = |w: &mut dyn Write| -> io::Result<()> {
        match output.format {
            Format::Csv => outcome.table.write_csv(w),
            Format::Json => outcome.table.write_json(w),
        }
    };
    match &output.out {
        Some(path) => {
            let file = File::create(path).map_err(|source| CliError::Io {
                path: path.clone(),
                source,
            })?;
            let mut w = BufWriter::new(file);
            render(&mut w).and_then(|_| w.flush()).map_err(|source| CliError::Io {
                path: path.clone(),
                source,
            })
        }
        None => {
            let stdout = io::stdout();
            let mut w = stdout.lock();
            render(&mut w).map_err(|source| CliError::Io {
                path: PathBuf::from("<stdout>"),
                source,
            })
        }
    }
}

fn run(cli: &Cli) -> Result<ExitCode, CliError> {
    let (outcome, output) = match &cli.command {
        Command::Simulate(args) => (experiments::simulate(&args.to_config())?, &args.output),
        Command::Theorem1(args) => (experiments::theorem1(&args.to_config())?, &args.output),
        Command::Limit(args) => (experiments::limit(&args.to_config())?, &args.output),
        Command::Bounds(output) => (experiments::bounds()?, output),
        Command::Montecarlo(args) => (experiments::montecarlo(&args.to_config())?, &args.output),
    };
    write_outcome(&outcome, output)?;

    if outcome.budget_exceeded > 0 {
        eprintln!(
            "{} instance(s) hit the step budget without converging",
            outcome.budget_exceeded
        );
        return Ok(ExitCode::from(4));
    }
    if output.strict && outcome.failed_assertions > 0 {
        eprintln!(
            "--strict: {} assertion row(s) failed",
            outcome.failed_assertions
        );
        return Ok(ExitCode::from(3));
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
