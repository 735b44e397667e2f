mod cli;
mod commands;
mod error;
mod output;
mod validate;

use std::process::ExitCode;

use clap::Parser;

use cli::Cli;
use error::{CliError, EXIT_USAGE, EXIT_VIOLATION};

/// NEGABETA_THREADS caps the global rayon pool.
fn configure_threads() -> Result<(), CliError> {
    let Ok(v) = std::env::var("NEGABETA_THREADS") else {
        return Ok(());
    };
    let n: usize = v.parse().ok().filter(|&n| n > 0).ok_or_else(|| CliError::usage(format!("NEGABETA_THREADS={v:?} is not a positive integer")))?;
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| CliError::usage(e.to_string()))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    let result = configure_threads().and_then(|_| commands::run(&cli.command)).and_then(|r| {
        output::emit(&r.body, cli.out.as_deref())?;
        Ok(r.violations)
    });
    match result {
        Ok(v) if v.is_empty() => ExitCode::SUCCESS,
        Ok(v) => {
            for m in v {
                eprintln!("violation: {m}");
            }
            ExitCode::from(EXIT_VIOLATION)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code)
        }
    }
}
