use std::process::ExitCode;

use clap::Parser;

fn main() -> ExitCode {
    let cli = dpq_cli::args::Cli::parse();
    ExitCode::from(dpq_cli::run(cli))
}
