//! `pmech`: reproducible bracket, dynamics and field experiments.

use std::process::ExitCode;

use clap::{Parser, Subcommand};

mod bracket;
mod coherent;
mod dw;
mod oscillator;
mod report;

use report::{error_object, UsageError};

#[derive(Parser, Debug)]
#[command(name = "pmech", version, about = "p-mechanical brackets, dynamics and De Donder-Weyl fields")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Bracket of two observables, optionally scanned over hbar.
    Bracket(bracket::Args),
    /// Trajectory of a polynomial observable under a polynomial Hamiltonian.
    Oscillator(oscillator::Args),
    /// March the De Donder-Weyl field equations and check the bracket form.
    Dw(dw::Args),
    /// Norms of the vacuum and random coherent states.
    Coherent(coherent::Args),
}

fn run(cli: Cli) -> anyhow::Result<()> {
    match cli.command {
        Command::Bracket(a) => bracket::run(&a),
        Command::Oscillator(a) => oscillator::run(&a),
        Command::Dw(a) => dw::run(&a),
        Command::Coherent(a) => coherent::run(&a),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            // --help and --version
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let err = anyhow::Error::new(UsageError(e.render().to_string()));
            eprintln!("{}", error_object(&err));
            return ExitCode::from(2);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("{}", error_object(&e));
            if e.downcast_ref::<UsageError>().is_some() {
                ExitCode::from(2)
            } else {
                ExitCode::FAILURE
            }
        }
    }
}
