mod compat;
mod config;
mod gen;
mod io;
mod tucker;
mod verify;

use std::process::ExitCode;

use clap::{Parser, Subcommand};
use homcompat::{HomError, TuckerError};

/// Compatibility graphs of Hom posets: build, solve, verify, and run Tucker-labeling experiments.
#[derive(Debug, Parser)]
#[command(name = "homcompat", version)]
pub struct Cli {
    /// JSON object whose keys mirror long flags; flags given on the command line win.
    #[arg(long, global = true, value_name = "FILE")]
    config: Option<std::path::PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate a graph and write it as graph6/DIMACS.
    Gen(gen::GenArgs),
    /// Build the compatibility graph of Hom(K_r, H).
    Compat(compat::CompatArgs),
    /// Check clique, chromatic, pullback, and girth properties of a compatibility graph.
    Verify(verify::VerifyArgs),
    /// Tucker-labeling experiments.
    #[command(subcommand)]
    Tucker(tucker::TuckerCommand),
}

/// Outcome of a command that ran to completion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    Fail,
    Inconclusive,
}

impl Status {
    fn code(self) -> u8 {
        match self {
            Status::Ok => 0,
            Status::Fail => 1,
            Status::Inconclusive => 2,
        }
    }
}

const EXIT_INVALID: u8 = 3;
const EXIT_CAP: u8 = 4;

fn error_code(err: &anyhow::Error) -> u8 {
    for cause in err.chain() {
        let capped = matches!(cause.downcast_ref::<HomError>(), Some(HomError::CapExceeded { .. }))
            || matches!(
                cause.downcast_ref::<TuckerError>(),
                Some(TuckerError::SweepCap { .. } | TuckerError::Hom(HomError::CapExceeded { .. }))
            );
        if capped {
            return EXIT_CAP;
        }
    }
    EXIT_INVALID
}

fn run(cli: Cli) -> anyhow::Result<Status> {
    match cli.command {
        Command::Gen(args) => gen::run(args),
        Command::Compat(args) => compat::run(args),
        Command::Verify(args) => verify::run(args),
        Command::Tucker(cmd) => tucker::run(cmd),
    }
}

fn main() -> ExitCode {
    let argv = match config::expand_args(std::env::args_os().collect()) {
        Ok(argv) => argv,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(EXIT_INVALID);
        }
    };
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(status) => ExitCode::from(status.code()),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(error_code(&e))
        }
    }
}
