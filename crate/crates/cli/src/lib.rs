//! Command-line front end for the two-mode model: configuration parsing,
//! figure presets, deterministic CSV output, and run dispatch.

pub mod config;
pub mod output;
pub mod preset;
pub mod run;

pub use config::{build_config, parse_config, Command, ConfigError, Overrides, RunConfig};
pub use preset::PresetId;
pub use run::{run, RunError, EXIT_COMPUTATION, EXIT_OK, EXIT_USAGE, EXIT_VALIDATION};
