//! `desitter` command-line tool.
//!
//! Exit status: 0 on success, 1 when a checked tolerance is violated or the
//! cutoff is too small for the requested state, 2 on invalid configuration.

mod commands;
mod config;
mod output;
mod verify;

use std::process::ExitCode;

use clap::Parser;

use config::{Cli, Command, RunConfig};

/// Why a run did not succeed.
#[derive(Debug)]
pub enum Failure {
    /// Invalid flags or unusable output path.
    Config(String),
    /// A tolerance was violated or the cutoff was insufficient.
    Check(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Config(_) => 2,
            Failure::Check(_) => 1,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Config(m) | Failure::Check(m) => m,
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let config = RunConfig::from_cli(cli).map_err(|e| Failure::Config(e.to_string()))?;
    match config.command {
        Command::Verify => verify::run(&config),
        Command::Contract => commands::contract(&config),
        Command::Squeeze => commands::squeeze(&config),
        Command::Ellipse => commands::ellipse(&config),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("desitter: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
