mod args;
mod commands;
mod table;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command};

/// Exit status 1 for usage and I/O problems, 2 for failed verification.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Io(String),
    Verification(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Io(_) => 1,
            CliError::Verification(_) => 2,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Io(m) => write!(f, "i/o error: {m}"),
            CliError::Verification(m) => write!(f, "verification failed: {m}"),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Io(e.to_string())
    }
}

impl From<ctqw_core::Error> for CliError {
    fn from(e: ctqw_core::Error) -> Self {
        match e {
            ctqw_core::Error::NotFid(_) => CliError::Verification(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let stdout = std::io::stdout().lock();
    let result = match cli.command {
        Command::Gen(a) => commands::gen(&a, stdout),
        Command::Decompose(a) => commands::decompose(&a, stdout),
        Command::Simulate(a) => commands::simulate(&a, stdout),
        Command::Verify(a) => commands::verify(&a, stdout),
        Command::Scan(a) => commands::scan(&a, stdout),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("ctqw: {e}");
            ExitCode::from(e.code())
        }
    }
}
