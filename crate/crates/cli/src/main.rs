use std::process::ExitCode;

use clap::Parser;

fn main() -> ExitCode {
    let cli = qrank_cli::Cli::parse();
    ExitCode::from(qrank_cli::run(&cli))
}
