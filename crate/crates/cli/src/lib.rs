//! Command-line front end for `qtomo-core`.

#![allow(clippy::excessive_precision)]

pub mod args;
pub mod commands;
pub mod error;
pub mod figures;
pub mod output;
pub mod verify;

use args::{Cli, Command};
use error::CliError;

/// Rendered output of a command and whether it succeeded.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub text: String,
    pub success: bool,
}

pub fn run(cli: &Cli) -> Result<Outcome, CliError> {
    // Reject bad tolerance flags even for commands that need no quadrature.
    commands::spec(cli, qtomo_core::QuadratureSpec::default())?;
    let table = match &cli.command {
        Command::Wigner(a) => commands::wigner(cli, a)?,
        Command::Tomogram(a) => commands::tomogram(cli, a)?,
        Command::Overlap(a) => commands::overlap(cli, a)?,
        Command::Moments(a) => commands::moments_table(cli, a)?,
        Command::Verify(a) => {
            let report = verify::run(
                a.suite,
                verify::Options {
                    quick: cli.quick,
                    chi: a.chi,
                },
            );
            return Ok(Outcome {
                text: report.to_json(),
                success: report.passed(),
            });
        }
    };
    let text = if cli.json { table.to_json() } else { table.to_csv() };
    Ok(Outcome { text, success: true })
}
