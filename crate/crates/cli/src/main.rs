use std::process::ExitCode;

use clap::Parser;

fn main() -> ExitCode {
    qgrass::cli::run(qgrass::cli::Cli::parse())
}
