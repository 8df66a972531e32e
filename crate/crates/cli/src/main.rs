mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use anticheckers::Error;
use clap::{Args, Parser, Subcommand};

use output::Format;

#[derive(Parser, Debug)]
#[command(
    name = "anticheckers",
    version,
    about = "Lattice propagator tables, figure data and verification suites"
)]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Output format; verify defaults to json, everything else to csv.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Output file, `-` for standard output.
    #[arg(long, global = true, default_value = "-")]
    pub out: PathBuf,
    /// Worker threads for table evaluation (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Propagator values on a grid of lattice points.
    Propagate(commands::propagate::PropagateArgs),
    /// Data behind the charge-density and propagator figures.
    Figure(commands::figure::FigureArgs),
    /// Identity, torus and multiparticle checks with a JSON report.
    Verify(commands::verify::VerifyArgs),
    /// Finite torus: partition function, arrows, loop configurations and the
    /// infinite-lattice limit.
    Torus(commands::torus::TorusArgs),
}

/// Failure of a command, mapped onto the exit-code contract.
#[derive(Debug)]
pub enum Failure {
    /// Bad configuration or request (exit 2).
    Usage(String),
    /// Numerical failure (exit 3).
    Numeric(String),
    /// Verification ran and found a failing check (exit 1).
    Verification,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Domain(_) | Error::Size(_) | Error::OrderOfLimits(_) => {
                Failure::Usage(e.to_string())
            }
            Error::Numeric { .. } | Error::Degenerate(_) => Failure::Numeric(e.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Usage(format!("output: {e}"))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.common.threads {
        if n == 0 {
            eprintln!("error: --threads must be positive");
            return ExitCode::from(2);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
        {
            eprintln!("error: thread pool: {e}");
            return ExitCode::from(2);
        }
    }
    let result = match &cli.command {
        Command::Propagate(a) => commands::propagate::run(a, &cli.common),
        Command::Figure(a) => commands::figure::run(a, &cli.common),
        Command::Verify(a) => commands::verify::run(a, &cli.common),
        Command::Torus(a) => commands::torus::run(a, &cli.common),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Numeric(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
