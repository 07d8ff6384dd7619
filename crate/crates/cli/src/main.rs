mod args;
mod commands;
mod sources;

use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::Parser;

use args::{Cli, Command};
use sicwitness::Error;

/// Exit status contract: 0 success, 1 usage or dimension error,
/// 2 validation failure, 3 I/O or parse error.
#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        Self {
            code: 1,
            message: message.into(),
        }
    }

    pub fn validation(message: impl Into<String>) -> Self {
        Self {
            code: 2,
            message: message.into(),
        }
    }

    pub fn io(message: impl Into<String>) -> Self {
        Self {
            code: 3,
            message: message.into(),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::DimensionMismatch { .. }
            | Error::UnsupportedDimension(_)
            | Error::InvalidParameter(_) => 1,
            Error::NotHermitian { .. }
            | Error::InvalidDensity(_)
            | Error::Validation(_)
            | Error::Convergence { .. } => 2,
            Error::Parse { .. } | Error::RaggedRow { .. } | Error::Format(_) | Error::Io(_) => 3,
        };
        Self {
            code,
            message: e.to_string(),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    let result = match cli.command {
        Command::CheckPovm(a) => commands::check_povm(a),
        Command::Eval(a) => commands::eval(a),
        Command::Scan(a) => commands::scan(a),
        Command::Optimize(a) => commands::optimize(a),
        Command::Demo(a) => commands::demo(a),
        Command::Compare(a) => commands::compare(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}
