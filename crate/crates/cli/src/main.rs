//! Command-line front end of the Anderson laboratory.
//!
//! Exit codes: 0 all verdicts pass, 1 some verdict fails, 2 usage or
//! configuration error, 3 capacity or I/O error.

mod args;
mod commands;
mod output;
mod resolve;

use std::process::ExitCode;

use anderson_core::experiments::ExperimentKind;
use clap::Parser;

use args::{Cli, Command};
use commands::Failure;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::SamplePotential(p) => commands::sample(p).map(|_| true),
        Command::Clusters(a) => commands::clusters(a).map(|_| true),
        Command::Coarse(p) => commands::coarse(p).map(|_| true),
        Command::Spectrum(a) => commands::spectrum(a).map(|_| true),
        Command::Animals(p) => commands::experiment(ExperimentKind::Animals, p),
        Command::Clearings(p) => commands::experiment(ExperimentKind::Clearings, p),
        Command::Bracketing(p) => commands::experiment(ExperimentKind::Bracketing, p),
        Command::Tail(p) => commands::experiment(ExperimentKind::Tail, p),
        Command::Chernoff(p) => commands::experiment(ExperimentKind::Chernoff, p),
        Command::EigScaling(p) => commands::experiment(ExperimentKind::EigScaling, p),
        Command::Threshold(p) => commands::experiment(ExperimentKind::Threshold, p),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Capacity(msg) | Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(3)
        }
    }
}
