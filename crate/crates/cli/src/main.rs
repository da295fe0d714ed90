use std::process::ExitCode;

use clap::{Parser, Subcommand};

mod args;
mod commands;
mod error;
mod output;

/// Two-level population transfer with a non-Hermitian shortcut to
/// adiabaticity.
#[derive(Debug, Parser)]
#[command(name = "adiashort", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Integrate one configuration and print the transfer summary
    Simulate(commands::SimulateArgs),
    /// Integrate every combination of comma-separated parameters
    Scan(commands::ScanArgs),
    /// Write the bare energies iγ/2 and Δ − iγ/2 along the sweep
    Energies(commands::EnergiesArgs),
    /// Write the synthesized gain/loss profile γ(t)
    Profile(commands::ProfileArgs),
    /// Run the acceptance criteria
    Verify(commands::VerifyArgs),
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Simulate(a) => commands::simulate(a),
        Command::Scan(a) => commands::scan(a),
        Command::Energies(a) => commands::energies(a),
        Command::Profile(a) => commands::profile(a),
        Command::Verify(a) => commands::verify(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
