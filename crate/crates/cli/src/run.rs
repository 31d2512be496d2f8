//! Run orchestration: dispatch a resolved configuration, write outputs,
//! map failures onto the documented exit codes.

use std::path::Path;

use rayon::prelude::*;
use thiserror::Error;

use twomode::dynamics::{population_trajectory, DynamicsError};
use twomode::model::ModelParams;
use twomode::oracle::{validate_similarity, validate_spectrum, ValidationReport};
use twomode::sample::ParamSampler;
use twomode::sector::{SectorError, StateVector};
use twomode::spectral::{self, SpectralError};
use twomode::wigner::ground_distribution;
use twomode::TrajectoryResult;

use crate::config::{Command, InitialStateSpec, RunConfig};
use crate::output;

/// Peak-counting floor used in distribution metadata.
pub const PEAK_FLOOR: f64 = 1e-3;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_COMPUTATION: i32 = 2;
pub const EXIT_VALIDATION: i32 = 3;

#[derive(Debug, Error)]
pub enum RunError {
    #[error("cannot write {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Sector(#[from] SectorError),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
    #[error(transparent)]
    Dynamics(#[from] DynamicsError),
    #[error("sweep produced no trajectories")]
    EmptySweep,
}

fn write_output(path: &Path, content: &str) -> Result<(), RunError> {
    std::fs::write(path, content).map_err(|source| RunError::Io {
        path: path.display().to_string(),
        source,
    })
}

fn initial_state(params: &ModelParams, spec: InitialStateSpec) -> Result<StateVector, RunError> {
    let sector = params.sector;
    let state = match spec {
        InitialStateSpec::AllInA => StateVector::basis_state(sector, sector.two_j() as i32)?,
        InitialStateSpec::AllInB => StateVector::basis_state(sector, -(sector.two_j() as i32))?,
        InitialStateSpec::Fock(m) => StateVector::basis_state(sector, (2.0 * m) as i32)?,
        InitialStateSpec::Eigenstate(m) => {
            spectral::eigenstate_construct(params, (2.0 * m) as i32)?
        }
    };
    Ok(state)
}

fn time_grid(config: &RunConfig) -> Vec<f64> {
    let n = config.n_samples;
    (0..n)
        .map(|i| i as f64 * config.t_max / (n - 1) as f64)
        .collect()
}

fn run_trajectories(config: &RunConfig, title: &str) -> Result<String, RunError> {
    let times = time_grid(config);
    let label = config.initial_state.label();
    match &config.sweep {
        None => {
            let psi0 = initial_state(&config.params, config.initial_state)?;
            let trajectory = population_trajectory(&config.params, &psi0, &times)?;
            Ok(output::trajectory_csv(
                title,
                &config.params,
                &label,
                None,
                &[trajectory],
            ))
        }
        Some((param, values)) => {
            // sweep points run concurrently; assembly stays in sweep order
            let trajectories: Vec<Result<TrajectoryResult, RunError>> = values
                .par_iter()
                .map(|&value| {
                    let point = param
                        .apply(&config.params, value)
                        .expect("sweep values are validated at configuration time");
                    let psi0 = initial_state(&point, config.initial_state)?;
                    Ok(population_trajectory(&point, &psi0, &times)?)
                })
                .collect();
            let trajectories: Vec<TrajectoryResult> =
                trajectories.into_iter().collect::<Result<_, _>>()?;
            if trajectories.is_empty() {
                return Err(RunError::EmptySweep);
            }
            Ok(output::trajectory_csv(
                title,
                &config.params,
                &label,
                Some((param.name(), values)),
                &trajectories,
            ))
        }
    }
}

/// Validation batch: similarity and spectrum checks over seeded random
/// parameter sets on the configured sector.
pub fn validation_reports(config: &RunConfig) -> Vec<ValidationReport> {
    let mut sampler = ParamSampler::new(config.seed);
    let mut reports = Vec::with_capacity(2 * config.sets);
    for _ in 0..config.sets {
        let params = sampler.model_params(config.params.sector);
        reports.push(validate_similarity(&params));
        reports.push(validate_spectrum(&params));
    }
    reports
}

/// Executes a resolved run. Returns the process exit code (0, or 3 when a
/// validation check fails); computation and I/O failures surface as errors
/// and map to exit code 2.
pub fn run(config: &RunConfig) -> Result<i32, RunError> {
    let title = match config.preset {
        Some(id) => format!("preset {}", id.name()),
        None => config.command.name().to_string(),
    };
    match config.command {
        Command::Spectrum => {
            let spectrum = spectral::spectrum(&config.params);
            let csv = output::spectrum_csv(&title, &config.params, &spectrum);
            write_output(&config.output_path, &csv)?;
            Ok(EXIT_OK)
        }
        Command::Ground => {
            let dist = ground_distribution(&config.params);
            let (_, regime) = spectral::ground_index(&config.params);
            let extra: &[&str] = if config.preset.is_some() {
                &["theta_note: 0.25 is this tool's default phase for the ground-state presets"]
            } else {
                &[]
            };
            let csv =
                output::distribution_csv(&title, &config.params, regime, &dist, PEAK_FLOOR, extra);
            write_output(&config.output_path, &csv)?;
            Ok(EXIT_OK)
        }
        Command::Dynamics | Command::Sweep => {
            let csv = run_trajectories(config, &title)?;
            write_output(&config.output_path, &csv)?;
            Ok(EXIT_OK)
        }
        Command::Validate => {
            let reports = validation_reports(config);
            let text = output::report_lines(&reports);
            write_output(&config.output_path, &text)?;
            print!("{text}");
            let all_passed = reports.iter().all(|r| r.passed);
            Ok(if all_passed { EXIT_OK } else { EXIT_VALIDATION })
        }
        Command::Preset => unreachable!("preset resolves to a concrete command"),
    }
}
