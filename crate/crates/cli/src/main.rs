//! `qubo-compose`: compile, solve and compose from spec files.
//!
//! Exit codes: 0 on success, 2 for bad input, 3 when a solver cannot handle
//! the model (size or capability).

mod commands;
mod error;

use std::process::ExitCode;

use clap::Parser;

fn main() -> ExitCode {
    let cli = commands::Cli::parse();
    match commands::run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
