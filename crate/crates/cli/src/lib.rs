//! Command-line driver: argument parsing, execution and report emission.
//!
//! Exit codes: 0 when every case holds, 1 on a counterexample, 2 when a case
//! stays undecided at the precision cap, 3 on usage or input errors.

pub mod args;
mod commands;
mod report;

use std::ffi::OsString;
use std::time::Instant;

use clap::error::ErrorKind;
use clap::Parser;

pub use args::{Cli, Format};
pub use commands::{execute, parse_range};
pub use report::{Record, Report, Summary};

pub const EXIT_USAGE: i32 = 3;

/// Parses `argv` and runs the command, writing the report to stdout or
/// `--out`. Returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp
                | ErrorKind::DisplayVersion
                | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => 0,
                _ => EXIT_USAGE,
            };
        }
    };
    match run_cli(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            EXIT_USAGE
        }
    }
}

/// Parses `argv` and executes the command without writing anything.
pub fn run_report<I, T>(argv: I) -> anyhow::Result<Report>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = Cli::try_parse_from(argv)?;
    build_report(&cli)
}

fn build_report(cli: &Cli) -> anyhow::Result<Report> {
    let start = Instant::now();
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(j) = cli.global.jobs {
        builder = builder.num_threads(j as usize);
    }
    let pool = builder.build()?;
    let mut report = pool.install(|| execute(&cli.command, &cli.global))?;
    if cli.global.timing {
        report.wall_time_seconds = Some(start.elapsed().as_secs_f64());
    }
    Ok(report)
}

fn run_cli(cli: &Cli) -> anyhow::Result<i32> {
    let report = build_report(cli)?;
    let text = report.render(cli.global.format)?;
    match &cli.global.out {
        Some(path) => std::fs::write(path, text)?,
        None => {
            use std::io::Write;
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()?;
        }
    }
    Ok(report.exit_code())
}
