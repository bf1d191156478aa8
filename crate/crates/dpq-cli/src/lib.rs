//! Command-line harness around the `dpq` library: exact analysis reports,
//! parameter grids, Monte Carlo simulation, the expected-cost recurrence,
//! optimization, contour evaluation, and self-check suites.
//!
//! All randomized output is a pure function of the configuration and the
//! root seed, so any run can be reproduced byte for byte.

pub mod args;
pub mod commands;
pub mod config;
pub mod format;
pub mod simulate;
pub mod svg;
pub mod verify;

use args::{Cli, Command};
use config::Settings;

/// Executes one parsed invocation and returns the process exit code:
/// 0 for success, 1 for failed verification, 2 for usage and IO errors.
pub fn run(cli: Cli) -> u8 {
    let settings = match Settings::resolve(&cli) {
        Ok(settings) => settings,
        Err(message) => {
            eprintln!("error: {message}");
            return 2;
        }
    };

    let result = match settings.parallel {
        Some(threads) => {
            let pool = match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
                Ok(pool) => pool,
                Err(e) => {
                    eprintln!("error: cannot build a {threads}-thread pool: {e}");
                    return 2;
                }
            };
            pool.install(|| dispatch(&cli.command, &settings))
        }
        None => dispatch(&cli.command, &settings),
    };

    match result {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            2
        }
    }
}

fn dispatch(command: &Command, settings: &Settings) -> Result<u8, String> {
    match command {
        Command::Analyze => commands::analyze(settings),
        Command::Table => commands::table(settings),
        Command::Simulate => commands::simulate(settings),
        Command::Recurrence => commands::recurrence(settings),
        Command::Optimize => commands::optimize(settings),
        Command::Contour => commands::contour(settings),
        Command::Verify {
            suite,
            corrupt_tolls,
        } => commands::verify(settings, suite.as_deref(), *corrupt_tolls),
    }
}
