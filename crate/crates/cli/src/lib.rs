//! Command-line front end for `robsub-core`.
//!
//! [`run`] dispatches a parsed [`Cli`] and maps outcomes onto the exit-code
//! contract; [`suites`] holds the acceptance criteria shared by
//! `robsub report acceptance-primary` and the `acceptance` test target.

pub mod args;
pub mod artifact;
mod commands;
pub mod suites;

use std::process::ExitCode;

use thiserror::Error;

pub use args::Cli;

/// Exit status of a successful run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ok,
    /// The search found nothing, or a checked property failed.
    NoneFound,
    /// A search budget ran out before the answer was known.
    Indeterminate,
}

impl Status {
    pub fn code(self) -> u8 {
        match self {
            Status::Ok => 0,
            Status::NoneFound => 1,
            Status::Indeterminate => 3,
        }
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Core(#[from] robsub_core::Error),
    #[error("cannot write output: {0}")]
    Output(String),
}

impl CliError {
    pub fn code(&self) -> u8 {
        2
    }

    pub fn from_io(e: std::io::Error) -> Self {
        CliError::Output(e.to_string())
    }
}

pub fn run(cli: Cli) -> Result<Status, CliError> {
    commands::dispatch(cli.command)
}

/// Parses `args`, runs, reports errors on stderr and returns the exit code.
pub fn main_with<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    use clap::Parser;
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(s) => ExitCode::from(s.code()),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}
