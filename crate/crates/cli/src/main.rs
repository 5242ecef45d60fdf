mod cli;
mod commands;
mod error;
mod family;
mod output;
mod verify;

use clap::Parser;

use cli::{Cli, Command};

fn main() {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Weights(a) => commands::weights(a),
        Command::Verify(a) => verify::run(a),
        Command::Measure(a) => commands::measure(a),
        Command::Sample(a) => commands::sample(a),
        Command::Census(a) => commands::census(a),
    };
    if let Err(e) = result {
        eprintln!("{e}");
        std::process::exit(e.exit_code());
    }
}
