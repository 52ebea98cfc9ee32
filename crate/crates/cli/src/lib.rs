//! `tduality` command-line driver: exact and RK4 simulations of the dual
//! systems, Iwasawa factorizations and the seeded verification suites.

pub mod error;
pub mod factorize;
pub mod output;
pub mod simulate;
pub mod verify;

use std::process::ExitCode;

use clap::{Parser, Subcommand};

pub use error::{CliError, CliResult};

#[derive(Debug, Parser)]
#[command(name = "tduality", version, about = "Poisson-Lie T-duality on SL(2,C): exact solutions and checks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Integrate one of the dual systems exactly, with RK4, or both.
    Simulate(Box<simulate::SimulateArgs>),
    /// Run the seeded property suites and write a JSON report.
    Verify(verify::VerifyArgs),
    /// Factorize a determinant-one matrix or an exponential curve as g·b.
    Factorize(factorize::FactorizeArgs),
}

/// Parses the process arguments, runs the subcommand and reports failures on
/// stderr.
pub fn main_exit() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Simulate(args) => simulate::run(&args),
        Command::Verify(args) => verify::run(&args),
        Command::Factorize(args) => factorize::run(&args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("tduality: {e}");
            e.exit_code()
        }
    }
}
