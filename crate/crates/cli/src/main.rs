//! `charsum`: verify character-sum identities, evaluate single sums and
//! print bound tables.

use std::process::ExitCode;

use clap::{Parser, Subcommand};

mod cache;
mod sum;
mod table;
mod verify;

#[derive(Parser)]
#[command(name = "charsum", version, about = "Exact character sums over finite fields and matrix groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check identities and print one report line per check.
    Verify(verify::Args),
    /// Evaluate a single sum exactly.
    Sum(sum::Args),
    /// Compare the two bounds on hyper-Kloosterman sums.
    Table(table::Args),
    /// Manage the on-disk field and polynomial cache.
    Cache(cache::Args),
}

/// Why a command stopped early.
pub enum Failure {
    /// Bad parameters or a workload above a cap (exit 2).
    Usage(String),
    /// I/O trouble (exit 1).
    Io(String),
}

impl From<charsum::Error> for Failure {
    fn from(e: charsum::Error) -> Self {
        match e {
            charsum::Error::Cache(msg) => Failure::Io(msg),
            other => Failure::Usage(other.to_string()),
        }
    }
}

pub type CmdResult = Result<ExitCode, Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Verify(args) => verify::run(args),
        Command::Sum(args) => sum::run(args),
        Command::Table(args) => table::run(args),
        Command::Cache(args) => cache::run(args),
    };
    match result {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
