use std::path::PathBuf;

use clap::{Parser, Subcommand};

use triqwit_cli::commands;
use triqwit_cli::error::CliResult;

/// Three-qubit entanglement identification toolkit.
///
/// States are addressed by family name with colon-separated parameters
/// (`ghz`, `w`, `psi_plus`, `rho1`, `sigma_insep`, `phi_b:B`, `sigma_b:B`,
/// `rho3:B:P`, `rho_w:P`) or by state file, with `@file` forcing file
/// interpretation. Settings are `pauli`, `example1`, `example2` or a
/// setting file.
#[derive(Parser)]
#[command(name = "triqwit", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Emit one machine-readable JSON object instead of key: value lines.
    #[arg(long, global = true)]
    machine: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a pure state as fully separable, biseparable or genuine
    /// entangled from its three g values.
    ClassifyPure {
        /// Pure state (named family or state file).
        state: String,
        /// Classifier tolerance on the g values.
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
    },
    /// Evaluate a witness (T1..T3, F1..F3, Fsum) on a state under a setting.
    Witness {
        state: String,
        witness: String,
        #[arg(long, default_value = "pauli")]
        setting: String,
        /// Violation tolerance separating signal from round-off.
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Sweep a witness over a family parameter grid and emit CSV.
    Scan {
        family: String,
        witness: String,
        /// Grid axis as name:lo:hi:step; repeat for each family parameter.
        #[arg(long = "grid", required = true)]
        grid: Vec<String>,
        #[arg(long, default_value = "pauli")]
        setting: String,
        /// Write the CSV here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Bisect the parameter of a one-parameter family where a witness
    /// crosses a target value.
    Threshold {
        family: String,
        witness: String,
        target: f64,
        #[arg(long, default_value = "pauli")]
        setting: String,
    },
    /// Search equal-orientation settings for the most negative witness value.
    Optimize {
        state: String,
        witness: String,
        #[arg(long, default_value_t = 64)]
        starts: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Simulate finite-shot estimation of a witness or of a raw Pauli
    /// product such as ZZZ.
    Sample {
        state: String,
        /// Witness id or three-letter Pauli product (I, X, Y, Z).
        witness: String,
        #[arg(long, default_value = "pauli")]
        setting: String,
        #[arg(long)]
        shots: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn run(cli: Cli) -> CliResult<Option<String>> {
    let machine = cli.machine;
    match cli.command {
        Command::ClassifyPure { state, tol } => {
            commands::classify_pure_cmd(&state, tol, machine).map(Some)
        }
        Command::Witness {
            state,
            witness,
            setting,
            tol,
        } => commands::witness_cmd(&state, &witness, &setting, tol, machine).map(Some),
        Command::Scan {
            family,
            witness,
            grid,
            setting,
            out,
        } => {
            let csv = commands::scan_cmd(&family, &witness, &grid, &setting)?;
            match out {
                Some(path) => {
                    std::fs::write(&path, csv)?;
                    Ok(None)
                }
                None => Ok(Some(csv)),
            }
        }
        Command::Threshold {
            family,
            witness,
            target,
            setting,
        } => commands::threshold_cmd(&family, &witness, target, &setting, machine).map(Some),
        Command::Optimize {
            state,
            witness,
            starts,
            seed,
        } => commands::optimize_cmd(&state, &witness, starts, seed, machine).map(Some),
        Command::Sample {
            state,
            witness,
            setting,
            shots,
            seed,
        } => commands::sample_cmd(&state, &witness, &setting, shots, seed, machine).map(Some),
    }
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(Some(output)) => print!("{output}"),
        Ok(None) => {}
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(e.exit_code());
        }
    }
}
