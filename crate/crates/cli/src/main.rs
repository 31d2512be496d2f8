use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use twomode_cli::config::{build_config, Command, Overrides};
use twomode_cli::preset::PresetId;
use twomode_cli::run::{run, EXIT_COMPUTATION, EXIT_USAGE};

/// Exactly solvable two-mode Bose-Hubbard model with three-body collisions:
/// spectra, ground-state distributions, population dynamics, validation.
#[derive(Debug, Parser)]
#[command(name = "twomode", version, about, disable_help_subcommand = true)]
struct Cli {
    /// spectrum | ground | dynamics | validate | preset | sweep
    /// (may instead come from the config file's `command:` key)
    command: Option<String>,

    /// Key-value configuration file; flags override its values
    #[arg(long)]
    config: Option<PathBuf>,

    /// Output file path
    #[arg(long)]
    out: Option<PathBuf>,

    /// First-order tunneling strength
    #[arg(long)]
    a1: Option<f64>,

    /// Second-order tunneling strength
    #[arg(long)]
    a2: Option<f64>,

    /// Third-order tunneling strength
    #[arg(long)]
    a3: Option<f64>,

    /// Tunneling phase in [0, 2π)
    #[arg(long)]
    theta: Option<f64>,

    /// Sector spin (half the particle number; non-negative half-integer)
    #[arg(long)]
    j: Option<f64>,

    /// Figure preset id: fig2a | fig2b | fig3a | fig3b | fig3c
    #[arg(long)]
    preset: Option<String>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // clap's own help/version output is not an error
            if err.use_stderr() {
                eprintln!("{err}");
                return ExitCode::from(EXIT_USAGE as u8);
            }
            print!("{err}");
            return ExitCode::SUCCESS;
        }
    };

    let command = match cli
        .command
        .as_deref()
        .map(str::parse::<Command>)
        .transpose()
    {
        Ok(command) => command,
        Err(message) => {
            eprintln!("error: {message}");
            return ExitCode::from(EXIT_USAGE as u8);
        }
    };
    let preset = match cli
        .preset
        .as_deref()
        .map(str::parse::<PresetId>)
        .transpose()
    {
        Ok(preset) => preset,
        Err(message) => {
            eprintln!("error: {message}");
            return ExitCode::from(EXIT_USAGE as u8);
        }
    };

    let document = match &cli.config {
        Some(path) => match std::fs::read_to_string(path) {
            Ok(text) => Some(text),
            Err(err) => {
                eprintln!("error: cannot read config {}: {err}", path.display());
                return ExitCode::from(EXIT_USAGE as u8);
            }
        },
        None => None,
    };

    let overrides = Overrides {
        command,
        preset,
        a1: cli.a1,
        a2: cli.a2,
        a3: cli.a3,
        theta: cli.theta,
        j: cli.j,
        out: cli.out,
    };
    let config = match build_config(document.as_deref(), &overrides) {
        Ok(config) => config,
        Err(err) => {
            eprintln!("error: {err}");
            return ExitCode::from(EXIT_USAGE as u8);
        }
    };

    match run(&config) {
        Ok(code) => ExitCode::from(code as u8),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(EXIT_COMPUTATION as u8)
        }
    }
}
