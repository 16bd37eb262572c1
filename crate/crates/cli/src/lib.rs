//! Command-line driver: argument parsing, seeded case generation and JSON
//! reports around the `ratideal` engine.

pub mod commands;
pub mod config;
pub mod report;

use std::ffi::OsString;

use clap::Parser;

pub use config::{Cli, RunConfig};
pub use report::{without_timestamp, ReportEnvelope};

/// Resolves the configuration and runs the command; never panics on bad input.
pub fn execute(cli: &Cli) -> ReportEnvelope {
    let name = cli.command.name();
    match RunConfig::resolve(cli) {
        Err(e) => ReportEnvelope::from_error(name, None, &e),
        Ok(cfg) => commands::dispatch(&cli.command, cfg.clone()).unwrap_or_else(|e| {
            let mut env = ReportEnvelope::from_error(name, Some(cfg), &e);
            if e.is_numerical() {
                // Numerical failures outrank usage errors in the exit code.
                env.cases.push(report::Case::new(0, "command", serde_json::Value::Null).with_error(e));
                env.error = None;
            }
            env
        }),
    }
}

/// Parses `args`, runs, writes output, and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let envelope = execute(&cli);
    let json = envelope.to_json();
    if let Some(path) = &cli.global.out {
        if let Err(e) = std::fs::write(path, &json) {
            eprintln!("cannot write {}: {e}", path.display());
            return 2;
        }
    }
    if cli.global.json {
        println!("{json}");
    } else {
        print!("{}", envelope.summary());
    }
    envelope.exit_code()
}
