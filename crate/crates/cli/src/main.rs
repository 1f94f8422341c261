use std::io::Write;
use std::process::ExitCode;

use clap::Parser;

use qtomo_delta::args::Cli;
use qtomo_delta::error::CliError;

fn threads_from_env() -> Result<(), CliError> {
    let Ok(raw) = std::env::var("QTOMO_THREADS") else {
        return Ok(());
    };
    match raw.trim().parse::<usize>() {
        Ok(n) if n > 0 => {
            qtomo_core::exec::init_threads(n);
            Ok(())
        }
        _ => Err(CliError::Usage(format!(
            "QTOMO_THREADS must be a positive integer, got {raw:?}"
        ))),
    }
}

fn execute(cli: &Cli) -> Result<bool, CliError> {
    threads_from_env()?;
    let outcome = qtomo_delta::run(cli)?;
    match &cli.output {
        Some(path) => std::fs::write(path, &outcome.text)?,
        None => std::io::stdout().lock().write_all(outcome.text.as_bytes())?,
    }
    Ok(outcome.success)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(CliError::Verification.exit_code() as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
