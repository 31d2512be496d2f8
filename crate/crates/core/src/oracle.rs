//! Brute-force ground truth: dense diagonalization, displacement operators
//! built by matrix exponential, similarity validation, and direct
//! propagation. Every analytic result in the crate is tested against the
//! operations here.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use std::fmt;
use thiserror::Error;

use crate::model::{assemble_h0, assemble_h3, ModelParams};
use crate::sector::{monomial_matrix, FockSector, Monomial, SectorOperator, StateVector};
use crate::spectral;

#[derive(Debug, Error, PartialEq)]
pub enum OracleError {
    #[error("operator is not Hermitian (residual {0:.3e})")]
    NotHermitian(f64),
    #[error(transparent)]
    Sector(#[from] crate::sector::SectorError),
}

/// Outcome of one validation check, serializable as a tab-separated line:
/// `check_name, max_abs_error, tolerance, PASS|FAIL, fitted_shift, notes`.
#[derive(Debug, Clone, PartialEq)]
pub struct ValidationReport {
    pub check_name: String,
    pub max_abs_error: f64,
    pub tolerance: f64,
    pub passed: bool,
    pub fitted_shift: f64,
    pub notes: String,
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}\t{:.16e}\t{:.16e}\t{}\t{:.16e}\t{}",
            self.check_name,
            self.max_abs_error,
            self.tolerance,
            if self.passed { "PASS" } else { "FAIL" },
            self.fitted_shift,
            self.notes
        )
    }
}

/// Dense Hermitian eigendecomposition with eigenvalues ascending and
/// eigenvector columns ordered to match.
pub fn dense_eigensolve(
    op: &SectorOperator,
) -> Result<(Vec<f64>, DMatrix<Complex64>), OracleError> {
    let residual = op.hermiticity_residual();
    if residual > 1e-10 {
        return Err(OracleError::NotHermitian(residual));
    }
    let eigen = op.matrix().clone().symmetric_eigen();
    let mut order: Vec<usize> = (0..eigen.eigenvalues.len()).collect();
    order.sort_by(|&a, &b| {
        eigen.eigenvalues[a]
            .partial_cmp(&eigen.eigenvalues[b])
            .unwrap()
    });
    let eigenvalues: Vec<f64> = order.iter().map(|&i| eigen.eigenvalues[i]).collect();
    let dim = op.sector().dim();
    let mut eigenvectors = DMatrix::<Complex64>::zeros(dim, dim);
    for (dst, &src) in order.iter().enumerate() {
        eigenvectors.set_column(dst, &eigen.eigenvectors.column(src));
    }
    Ok((eigenvalues, eigenvectors))
}

/// The two-mode displacement operator `exp(−(θ/2)(a†b − ab†))` restricted
/// to the sector, built as the exponential of the skew-symmetric generator
/// via Hermitian eigendecomposition (the generator is normal, so this is
/// exactly unitary to round-off).
pub fn displacement_matrix(sector: FockSector, theta: f64) -> SectorOperator {
    let hop =
        monomial_matrix(sector, &Monomial::new(1, 0, 0, 1)).expect("a†b conserves particle number");
    let back =
        monomial_matrix(sector, &Monomial::new(0, 1, 1, 0)).expect("ab† conserves particle number");
    // G = −(θ/2)(a†b − ab†); exp(G) = V·exp(−iΛ)·V† where iG = VΛV†
    let generator = (hop.matrix() - back.matrix()) * Complex64::new(-theta / 2.0, 0.0);
    let hermitian = &generator * Complex64::i();
    let eigen = hermitian.symmetric_eigen();
    let phases = DVector::from_iterator(
        sector.dim(),
        eigen
            .eigenvalues
            .iter()
            .map(|&l| Complex64::new(0.0, -l).exp()),
    );
    let matrix =
        &eigen.eigenvectors * DMatrix::from_diagonal(&phases) * eigen.eigenvectors.adjoint();
    SectorOperator::new(sector, matrix)
}

/// Fits the scalar shift `c = tr(R)/dim` and returns `(c, ‖R − c·I‖max)`.
/// Anything that is not a multiple of the identity stays in the residual.
fn shifted_residual(difference: &DMatrix<Complex64>) -> (f64, f64) {
    let dim = difference.nrows();
    let shift = difference.trace().re / dim as f64;
    let mut max = 0.0f64;
    for row in 0..dim {
        for col in 0..dim {
            let mut value = difference[(row, col)];
            if row == col {
                value -= Complex64::new(shift, 0.0);
            }
            max = max.max(value.norm());
        }
    }
    (shift, max)
}

/// Checks the model's central similarity statement: the assembled
/// Hamiltonian equals `D·H0·D†` plus a scalar shift.
///
/// The check runs under both spectrum conventions — the doubled-variable
/// diagonal of [`assemble_h0`] and the population form `E_m` — and reports
/// which passes; the returned error and shift belong to the better one.
/// The notes also record the residual the heuristic coefficient table
/// would leave, documenting why the exact closed forms differ from it.
pub fn validate_similarity(params: &ModelParams) -> ValidationReport {
    let h3 = assemble_h3(params);
    let d = displacement_matrix(params.sector, params.theta);
    let tolerance = 1e-9 * h3.max_norm();

    let rotated = |h0: &SectorOperator| d.matrix() * h0.matrix() * d.matrix().adjoint();
    let rotated_operator = rotated(&assemble_h0(params));

    let (shift_op, residual_op) = shifted_residual(&(h3.matrix() - &rotated_operator));
    let population =
        SectorOperator::from_diagonal(params.sector, |two_m| spectral::energy_at(params, two_m));
    let (shift_pop, residual_pop) = shifted_residual(&(h3.matrix() - rotated(&population)));

    let heuristic = crate::model::assemble_from_table(
        params.sector,
        &crate::model::heuristic_coefficient_table(params),
    );
    let (_, residual_heuristic) = shifted_residual(&(heuristic.matrix() - rotated_operator));

    let operator_wins = residual_op <= residual_pop;
    let (max_abs_error, fitted_shift, winner, loser, loser_residual) = if operator_wins {
        (
            residual_op,
            shift_op,
            "operator-2m",
            "population-m",
            residual_pop,
        )
    } else {
        (
            residual_pop,
            shift_pop,
            "population-m",
            "operator-2m",
            residual_op,
        )
    };
    ValidationReport {
        check_name: "similarity".into(),
        max_abs_error,
        tolerance,
        passed: max_abs_error <= tolerance,
        fitted_shift,
        notes: format!(
            "convention={winner} ({loser} residual {loser_residual:.3e}; heuristic-table residual {residual_heuristic:.3e})"
        ),
    }
}

/// Compares the sorted analytic spectrum (in the operator convention)
/// against the eigenvalues of the assembled Hamiltonian, up to one fitted
/// constant.
pub fn validate_spectrum(params: &ModelParams) -> ValidationReport {
    let h3 = assemble_h3(params);
    let scale = h3.max_norm().max(1.0);
    let report = |error: f64, shift: f64| ValidationReport {
        check_name: "spectrum_match".into(),
        max_abs_error: error,
        tolerance: 1e-9 * scale,
        passed: error <= 1e-9 * scale,
        fitted_shift: shift,
        notes: "sorted analytic levels vs dense eigenvalues".into(),
    };
    let eigenvalues = match dense_eigensolve(&h3) {
        Ok((values, _)) => values,
        Err(err) => return report(f64::INFINITY, f64::NAN).tagged(err),
    };
    let mut analytic = spectral::operator_energy_levels(params);
    analytic.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let dim = analytic.len() as f64;
    let shift: f64 = eigenvalues
        .iter()
        .zip(&analytic)
        .map(|(e, a)| e - a)
        .sum::<f64>()
        / dim;
    let error = eigenvalues
        .iter()
        .zip(&analytic)
        .map(|(e, a)| (e - a - shift).abs())
        .fold(0.0, f64::max);
    report(error, shift)
}

impl ValidationReport {
    fn tagged(mut self, err: OracleError) -> Self {
        self.notes = format!("{err}");
        self.passed = false;
        self
    }
}

/// Exact propagation `|ψ(t)⟩ = V·e^{−iΛt}·V†|ψ₀⟩` through the dense
/// eigendecomposition of `op`.
pub fn propagate_oracle(
    op: &SectorOperator,
    psi0: &StateVector,
    times: &[f64],
) -> Result<Vec<StateVector>, OracleError> {
    if psi0.sector() != op.sector() {
        return Err(OracleError::Sector(
            crate::sector::SectorError::SectorMismatch(op.sector().two_j(), psi0.sector().two_j()),
        ));
    }
    let (eigenvalues, eigenvectors) = dense_eigensolve(op)?;
    let coefficients = eigenvectors.adjoint() * psi0.amplitudes();
    let mut states = Vec::with_capacity(times.len());
    for &t in times {
        let phased = DVector::from_iterator(
            coefficients.len(),
            coefficients
                .iter()
                .zip(&eigenvalues)
                .map(|(c, &e)| c * Complex64::new(0.0, -e * t).exp()),
        );
        states.push(StateVector::new(op.sector(), &eigenvectors * phased));
    }
    Ok(states)
}
