//! `sumrules`: reproduce sum-rule tables and run the verification suites from the shell.

mod cli;
mod commands;
mod config;
mod reference;
mod render;
mod select;
mod verify;

use std::process::ExitCode;

use clap::Parser;
use sumrule_core::Error;

use crate::cli::{Cli, Command};

/// Exit 1 for a failed check or computation, exit 2 for anything the caller got wrong.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Failure(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> CliError {
        match e {
            Error::InvalidQuantumNumbers { .. }
            | Error::NoMinusChannel
            | Error::InvalidPotential(_)
            | Error::InvalidOrder(_)
            | Error::OutOfValidityRange { .. }
            | Error::NonPositiveQ(_)
            | Error::NonPositiveScale(_) => CliError::Usage(e.to_string()),
            _ => CliError::Failure(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let args = match config::splice(std::env::args().collect()) {
        Ok(a) => a,
        Err(msg) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
    };
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        // clap exits 0 for --help and --version and 2 for parse errors.
        Err(e) => e.exit(),
    };
    let result = match cli.command {
        Command::Table(a) => commands::table(&a),
        Command::Verify(a) => commands::verify(&a),
        Command::Matrix(a) => commands::matrix(&a),
        Command::Kramers(a) => commands::kramers(&a),
        Command::Potential(a) => commands::potential(&a),
    };
    match result {
        Ok((text, pass)) => {
            print!("{text}");
            if pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(CliError::Failure(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
