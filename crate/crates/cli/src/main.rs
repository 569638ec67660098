use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

mod analyze;
mod demo;
mod io;
mod synthesize;
mod verify;

use io::CliError;

/// Quantum secret sharing with prime-qudit stabilizer codes.
#[derive(Parser, Debug)]
#[command(name = "qss", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Dimensions, logical pairs and minimal qualified share sets of a code.
    Analyze {
        spec: PathBuf,
        /// Largest qualified set size to list.
        #[arg(long)]
        max_size: Option<usize>,
    },
    /// Writes the reconstruction circuit for a set of shares.
    Synthesize {
        spec: PathBuf,
        /// Available shares, e.g. `3,4,5,6`.
        #[arg(long, value_delimiter = ',', required = true)]
        set: Vec<usize>,
        /// Output file; the circuit goes to stdout when omitted.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Simulates reconstruction for qualified sets and random secrets and
    /// prints a JSON report.
    Verify {
        spec: PathBuf,
        #[arg(long, default_value_t = 20)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Restrict the sweep to one share set.
        #[arg(long, value_delimiter = ',')]
        set: Option<Vec<usize>>,
        /// Report file; stdout when omitted.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Walks through the bundled [[6,2,3]]_3 example.
    Demo,
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Analyze { spec, max_size } => analyze::run(&spec, max_size),
        Command::Synthesize { spec, set, output } => synthesize::run(&spec, &set, output.as_deref()),
        Command::Verify {
            spec,
            trials,
            seed,
            set,
            output,
        } => verify::run(&spec, trials, seed, set.as_deref(), output.as_deref()),
        Command::Demo => demo::run(),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
