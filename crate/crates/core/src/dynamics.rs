//! Analytic time evolution of the relative population from the eigenbasis
//! expansion.
//!
//! Any initial state expands over the rotated eigenstates with constant
//! coefficients `C_m`, and the expectation of the relative-population
//! operator evolves as
//!
//! ```text
//! ⟨m⟩(t) = cos θ Σ_m m |C_m|²
//!        − sin θ Σ_m √(j(j+1) − m(m−1)) Re[C_m C̄_{m−1} e^{i(E_{m−1}−E_m)t}]
//! ```
//!
//! which for real coefficients reduces to the familiar
//! `C_m C_{m−1} cos[(E_{m−1}−E_m)t]` form. The frequencies use the
//! operator-form spectrum (see [`crate::spectral::operator_energy_levels`]);
//! that choice is what makes the analytic trajectory agree with brute-force
//! propagation of the assembled Hamiltonian to round-off.

use nalgebra::DVector;
use num_complex::Complex64;
use thiserror::Error;

use crate::model::{similarity_shift, ModelParams};
use crate::sector::{SectorError, StateVector};
use crate::spectral::operator_energy_levels;
use crate::wigner;

#[derive(Debug, Error, PartialEq)]
pub enum DynamicsError {
    #[error("state norm is {0}, expected 1 (normalize the initial state)")]
    NotNormalized(f64),
    #[error(transparent)]
    Sector(#[from] SectorError),
}

/// Time series of the expected relative population.
#[derive(Debug, Clone, PartialEq)]
pub struct TrajectoryResult {
    pub times: Vec<f64>,
    pub values: Vec<f64>,
    pub params: ModelParams,
    pub initial_label: String,
}

fn check_normalized(psi0: &StateVector) -> Result<(), DynamicsError> {
    let norm = psi0.norm();
    if (norm - 1.0).abs() > 1e-8 {
        return Err(DynamicsError::NotNormalized(norm));
    }
    Ok(())
}

/// Eigenbasis coefficients `C_m = ⟨j,m| D† |ψ₀⟩`, i.e. the inverse rotation
/// applied to the initial amplitudes.
pub fn expand_initial(
    params: &ModelParams,
    psi0: &StateVector,
) -> Result<Vec<Complex64>, DynamicsError> {
    if psi0.sector() != params.sector {
        return Err(DynamicsError::Sector(SectorError::SectorMismatch(
            params.sector.two_j(),
            psi0.sector().two_j(),
        )));
    }
    check_normalized(psi0)?;
    let two_j = params.sector.two_j();
    let dim = params.sector.dim();
    let amplitudes = psi0.amplitudes();
    let nonzero: Vec<usize> = (0..dim)
        .filter(|&idx| amplitudes[idx].norm() > 0.0)
        .collect();
    let mut coefficients = vec![Complex64::new(0.0, 0.0); dim];
    if nonzero.len() * 4 <= dim {
        // sparse initial state: only the occupied rows of the d-matrix matter
        for &idx in &nonzero {
            let two_m_row = params.sector.two_m_at(idx);
            let row =
                wigner::d_row(two_j, two_m_row, params.theta).expect("sector indices are valid");
            for (c, d) in coefficients.iter_mut().zip(row) {
                *c += amplitudes[idx] * d;
            }
        }
    } else {
        let rotation = wigner::rotation_matrix(two_j, params.theta);
        for (col, c) in coefficients.iter_mut().enumerate() {
            let mut acc = Complex64::new(0.0, 0.0);
            for row in 0..dim {
                acc += amplitudes[row] * rotation[(row, col)];
            }
            *c = acc;
        }
    }
    Ok(coefficients)
}

fn describe_initial(params: &ModelParams, psi0: &StateVector) -> String {
    let dominant = psi0
        .amplitudes()
        .iter()
        .enumerate()
        .find(|(_, amp)| (amp.norm() - 1.0).abs() < 1e-12);
    match dominant {
        Some((idx, _)) => format!("fock({})", params.sector.two_m_at(idx) as f64 / 2.0),
        None => "custom".into(),
    }
}

/// Evolution of `⟨m⟩(t)` from the closed-form eigenbasis expression.
pub fn population_trajectory(
    params: &ModelParams,
    psi0: &StateVector,
    times: &[f64],
) -> Result<TrajectoryResult, DynamicsError> {
    let coefficients = expand_initial(params, psi0)?;
    let energies = operator_energy_levels(params);
    let sector = params.sector;
    let two_j = sector.two_j() as i64;
    let (sin_theta, cos_theta) = params.theta.sin_cos();

    let constant: f64 = cos_theta
        * coefficients
            .iter()
            .zip(sector.two_m_values())
            .map(|(c, two_m)| two_m as f64 / 2.0 * c.norm_sqr())
            .sum::<f64>();

    // one oscillator per adjacent pair: weight, frequency
    struct Mode {
        weight: Complex64,
        frequency: f64,
    }
    let modes: Vec<Mode> = (1..sector.dim())
        .map(|idx| {
            let two_m = sector.two_m_at(idx) as i64;
            // √(j(j+1) − m(m−1)) in doubled-integer arithmetic
            let ladder = ((two_j * (two_j + 2) - two_m * (two_m - 2)) as f64).sqrt() / 2.0;
            Mode {
                weight: coefficients[idx] * coefficients[idx - 1].conj() * ladder,
                frequency: energies[idx - 1] - energies[idx],
            }
        })
        .collect();

    let values: Vec<f64> = times
        .iter()
        .map(|&t| {
            let oscillating: f64 = modes
                .iter()
                .map(|mode| {
                    let (s, c) = (mode.frequency * t).sin_cos();
                    mode.weight.re * c - mode.weight.im * s
                })
                .sum();
            constant - sin_theta * oscillating
        })
        .collect();

    Ok(TrajectoryResult {
        times: times.to_vec(),
        values,
        params: *params,
        initial_label: describe_initial(params, psi0),
    })
}

/// Full analytic propagation `|ψ(t)⟩ = Σ_m C_m e^{−i(E_m+c)t} |E_m⟩`,
/// including the similarity shift `c` so the result matches brute-force
/// propagation of the assembled Hamiltonian phase for phase.
pub fn full_state_trajectory(
    params: &ModelParams,
    psi0: &StateVector,
    times: &[f64],
) -> Result<Vec<StateVector>, DynamicsError> {
    let coefficients = expand_initial(params, psi0)?;
    let energies = operator_energy_levels(params);
    let shift = similarity_shift(params);
    let rotation = wigner::rotation_matrix(params.sector.two_j(), params.theta);
    let dim = params.sector.dim();

    let states = times
        .iter()
        .map(|&t| {
            let phased: Vec<Complex64> = coefficients
                .iter()
                .zip(&energies)
                .map(|(c, &e)| c * Complex64::new(0.0, -(e + shift) * t).exp())
                .collect();
            let amplitudes = DVector::from_iterator(
                dim,
                (0..dim).map(|row| {
                    (0..dim)
                        .map(|col| phased[col] * rotation[(row, col)])
                        .sum::<Complex64>()
                }),
            );
            StateVector::new(params.sector, amplitudes)
        })
        .collect();
    Ok(states)
}

/// Oscillation envelope around `center`: the largest deviation of the
/// trajectory from its local mean over a window of the given width.
/// Returns 0 when no samples fall inside the window.
pub fn envelope_peak(trajectory: &TrajectoryResult, center: f64, width: f64) -> f64 {
    let half = width / 2.0;
    let window: Vec<f64> = trajectory
        .times
        .iter()
        .zip(&trajectory.values)
        .filter(|(t, _)| (**t - center).abs() <= half)
        .map(|(_, v)| *v)
        .collect();
    if window.is_empty() {
        return 0.0;
    }
    let mean = window.iter().sum::<f64>() / window.len() as f64;
    window.iter().map(|v| (v - mean).abs()).fold(0.0, f64::max)
}
