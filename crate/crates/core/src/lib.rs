//! Exactly solvable two-mode Bose-Hubbard model with two- and three-body
//! collisions.
//!
//! The library computes spectra, ground-state probability distributions and
//! relative-population dynamics of the model in closed form, and ships a
//! brute-force exact-diagonalization oracle against which every analytic
//! result is validated.
//!
//! Module map:
//!
//! * [`sector`] — fixed-`N` Fock sector, ladder-operator monomials, states.
//! * [`model`] — the coefficient table, assembled Hamiltonians, microscopic
//!   parameter map.
//! * [`spectral`] — analytic energies, ground-state selection, eigenstates.
//! * [`wigner`] — numerically stable Wigner `d`-matrix elements and the
//!   ground-state distribution.
//! * [`dynamics`] — analytic time evolution of `⟨m⟩(t)` and full states.
//! * [`oracle`] — dense diagonalization, displacement operators, similarity
//!   validation, direct propagation.
//! * [`sample`] — seeded parameter sampling for validation batches.

pub mod dynamics;
pub mod model;
pub mod oracle;
pub mod sample;
pub mod sector;
pub mod spectral;
pub mod wigner;

pub use dynamics::TrajectoryResult;
pub use model::{CoefficientTable, ModelParams, PhysicalInputs};
pub use oracle::ValidationReport;
pub use sector::{FockSector, Monomial, SectorOperator, StateVector};
pub use spectral::{Regime, SpectrumResult};
pub use wigner::DistributionResult;
