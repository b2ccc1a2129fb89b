use std::io::Write;
use std::process::ExitCode;

use clap::Parser;
use invosc_cli::{run, Cli, CliError, Outcome};

fn write_outputs(cli: &Cli, outcome: &Outcome) -> Result<(), CliError> {
    let io = |what: &str, e: std::io::Error| CliError::Io(format!("writing {what}: {e}"));
    for (path, text) in &outcome.extra_files {
        std::fs::write(path, text).map_err(|e| io(&path.display().to_string(), e))?;
    }
    match &cli.out {
        Some(path) => std::fs::write(path, &outcome.body).map_err(|e| io(&path.display().to_string(), e)),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(outcome.body.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| io("stdout", e))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(&cli).and_then(|outcome| {
        write_outputs(&cli, &outcome)?;
        Ok(outcome)
    });
    match result {
        Ok(outcome) => {
            for w in &outcome.warnings {
                eprintln!("warning: {w}");
            }
            ExitCode::from(outcome.exit_code as u8)
        }
        Err(err) => {
            eprintln!("invosc: {err}");
            ExitCode::from(err.exit_code() as u8)
        }
    }
}
