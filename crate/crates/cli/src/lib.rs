//! Command-line front end.
//!
//! Exit status: 0 on success, 1 when the answer is negative although a
//! solution was asked for (infeasible, unresolved, invalid), 2 on usage or
//! input errors. Primary results go to stdout as JSON; diagnostics to stderr.

pub mod args;
pub mod bench;
mod commands;
pub mod manifest;
pub mod warm;

use args::Cli;
use clap::Parser;
use std::ffi::OsString;

pub use commands::execute;

/// Outcome of a successfully executed command.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    Negative,
}

impl Status {
    pub fn code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::Negative => 1,
        }
    }
}

/// Parses `argv` (including the program name), runs the command and returns
/// the exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(&cli) {
        Ok(status) => status.code(),
        Err(e) => {
            eprintln!("error: {e:#}");
            2
        }
    }
}
