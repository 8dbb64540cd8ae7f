mod args;
mod commands;

use std::process::ExitCode;

use clap::Parser;

use args::{Cli, Command, RunConfig};
use commands::Outcome;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut config = RunConfig::from_command(&cli.command);
    let result = match &cli.command {
        Command::Verify(a) => commands::verify(a, &mut config),
        Command::Search(a) => commands::search(a, &mut config),
        Command::Bound(a) => commands::bound(a, &mut config),
        Command::Sweep(a) => commands::sweep(a, &mut config),
    };
    match result {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::Violation) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
