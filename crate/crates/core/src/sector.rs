//! Fixed-particle-number Fock sector and matrix representations of
//! number-conserving boson-operator monomials on it.
//!
//! A two-mode system with `N` particles total is spanned by the states
//! `|j, m⟩` with `2j = N`, `n_a = j + m`, `n_b = j − m`. Everything here
//! indexes that sector by the doubled values `2j` and `2m` so that
//! half-integer spins stay in integer arithmetic.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use thiserror::Error;

/// Threshold above which occupation-factor products switch to log-domain
/// evaluation to avoid losing precision near the f64 integer limit.
const DIRECT_PRODUCT_LIMIT: f64 = 1e15;

#[derive(Debug, Error, PartialEq)]
pub enum SectorError {
    #[error("monomial a†^{p} b†^{q} a^{r} b^{s} does not conserve particle number (p+q={}, r+s={})", .p + .q, .r + .s)]
    NonConserving { p: u32, q: u32, r: u32, s: u32 },
    #[error("operators act on different sectors (2j = {0} vs 2j = {1})")]
    SectorMismatch(u32, u32),
    #[error("spin {0} is not a non-negative half-integer")]
    BadSpin(f64),
    #[error("2m = {two_m} lies outside the sector 2j = {two_j}")]
    IndexOutOfRange { two_j: u32, two_m: i32 },
    #[error(
        "expectation value has non-negligible imaginary part {0:.3e}; operator is not Hermitian"
    )]
    ImaginaryResidue(f64),
}

/// The fixed-`N` Fock sector, identified by its spin `j` (stored doubled).
///
/// Dimension is `2j + 1`; basis states are `|j, m⟩` for `m = −j … j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FockSector {
    two_j: u32,
}

impl FockSector {
    pub fn from_two_j(two_j: u32) -> Self {
        Self { two_j }
    }

    /// Builds the sector from a spin given as a float. Fails unless `2j`
    /// is a non-negative integer.
    pub fn from_spin(j: f64) -> Result<Self, SectorError> {
        let two_j = 2.0 * j;
        if !(two_j.is_finite() && two_j >= 0.0 && two_j.fract() == 0.0 && two_j <= u32::MAX as f64)
        {
            return Err(SectorError::BadSpin(j));
        }
        Ok(Self {
            two_j: two_j as u32,
        })
    }

    pub fn two_j(&self) -> u32 {
        self.two_j
    }

    pub fn spin(&self) -> f64 {
        self.two_j as f64 / 2.0
    }

    pub fn dim(&self) -> usize {
        self.two_j as usize + 1
    }

    /// Doubled relative-population eigenvalues in ascending order:
    /// `2m = −2j, −2j + 2, …, 2j`.
    pub fn two_m_values(&self) -> impl Iterator<Item = i32> + '_ {
        let two_j = self.two_j as i32;
        (0..self.dim()).map(move |idx| 2 * idx as i32 - two_j)
    }

    pub fn m_values(&self) -> impl Iterator<Item = f64> + '_ {
        self.two_m_values().map(|two_m| two_m as f64 / 2.0)
    }

    /// Basis index of `|j, m⟩`, or `None` if `2m` is out of range or has
    /// the wrong parity for this sector.
    pub fn index_of(&self, two_m: i32) -> Option<usize> {
        let two_j = self.two_j as i32;
        if two_m.abs() > two_j || (two_m + two_j) % 2 != 0 {
            return None;
        }
        Some(((two_m + two_j) / 2) as usize)
    }

    pub fn two_m_at(&self, index: usize) -> i32 {
        debug_assert!(index < self.dim());
        2 * index as i32 - self.two_j as i32
    }

    /// Occupation numbers `(n_a, n_b) = (j + m, j − m)`.
    pub fn occupations(&self, two_m: i32) -> (u64, u64) {
        let two_j = self.two_j as i64;
        let two_m = two_m as i64;
        debug_assert!(two_m.abs() <= two_j && (two_j + two_m) % 2 == 0);
        (((two_j + two_m) / 2) as u64, ((two_j - two_m) / 2) as u64)
    }
}

/// A product `a†^p b†^q a^r b^s`, the building block of every Hamiltonian
/// term. Only number-conserving monomials (`p + q == r + s`) act within a
/// sector.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Monomial {
    pub create_a: u32,
    pub create_b: u32,
    pub annihilate_a: u32,
    pub annihilate_b: u32,
}

impl Monomial {
    pub fn new(create_a: u32, create_b: u32, annihilate_a: u32, annihilate_b: u32) -> Self {
        Self {
            create_a,
            create_b,
            annihilate_a,
            annihilate_b,
        }
    }

    pub fn conserves_number(&self) -> bool {
        self.create_a + self.create_b == self.annihilate_a + self.annihilate_b
    }

    /// Hermitian conjugate: creation and annihilation powers swap.
    pub fn adjoint(&self) -> Self {
        Self {
            create_a: self.annihilate_a,
            create_b: self.annihilate_b,
            annihilate_a: self.create_a,
            annihilate_b: self.create_b,
        }
    }

    /// Net change this monomial causes in `2m = n_a − n_b`.
    fn two_m_shift(&self) -> i32 {
        let da = self.create_a as i32 - self.annihilate_a as i32;
        let db = self.create_b as i32 - self.annihilate_b as i32;
        da - db
    }
}

/// Dense operator on a single Fock sector.
#[derive(Debug, Clone, PartialEq)]
pub struct SectorOperator {
    sector: FockSector,
    matrix: DMatrix<Complex64>,
}

impl SectorOperator {
    pub fn new(sector: FockSector, matrix: DMatrix<Complex64>) -> Self {
        assert_eq!(matrix.nrows(), sector.dim());
        assert_eq!(matrix.ncols(), sector.dim());
        Self { sector, matrix }
    }

    pub fn zeros(sector: FockSector) -> Self {
        Self {
            sector,
            matrix: DMatrix::zeros(sector.dim(), sector.dim()),
        }
    }

    pub fn identity(sector: FockSector) -> Self {
        Self {
            sector,
            matrix: DMatrix::identity(sector.dim(), sector.dim()),
        }
    }

    pub fn from_diagonal(sector: FockSector, diag: impl Fn(i32) -> f64) -> Self {
        let entries: Vec<Complex64> = sector
            .two_m_values()
            .map(|two_m| Complex64::new(diag(two_m), 0.0))
            .collect();
        Self {
            sector,
            matrix: DMatrix::from_diagonal(&DVector::from_vec(entries)),
        }
    }

    pub fn sector(&self) -> FockSector {
        self.sector
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.matrix
    }

    pub fn into_matrix(self) -> DMatrix<Complex64> {
        self.matrix
    }

    pub fn adjoint(&self) -> Self {
        Self {
            sector: self.sector,
            matrix: self.matrix.adjoint(),
        }
    }

    /// Largest elementwise deviation from Hermiticity, `max |A − A†|`.
    pub fn hermiticity_residual(&self) -> f64 {
        let adj = self.matrix.adjoint();
        (&self.matrix - adj)
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max)
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_residual() <= tol
    }

    /// Largest element modulus.
    pub fn max_norm(&self) -> f64 {
        self.matrix.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            sector: self.sector,
            matrix: &self.matrix * Complex64::new(factor, 0.0),
        }
    }

    pub fn add_scaled(&mut self, factor: f64, other: &SectorOperator) {
        assert_eq!(self.sector, other.sector);
        self.matrix += &other.matrix * Complex64::new(factor, 0.0);
    }

    pub fn apply(&self, state: &StateVector) -> Result<StateVector, SectorError> {
        if state.sector != self.sector {
            return Err(SectorError::SectorMismatch(
                self.sector.two_j(),
                state.sector.two_j(),
            ));
        }
        Ok(StateVector {
            sector: self.sector,
            amplitudes: &self.matrix * &state.amplitudes,
        })
    }
}

/// State on a Fock sector; amplitudes are indexed by ascending `m`.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    sector: FockSector,
    amplitudes: DVector<Complex64>,
}

impl StateVector {
    pub fn new(sector: FockSector, amplitudes: DVector<Complex64>) -> Self {
        assert_eq!(amplitudes.len(), sector.dim());
        Self { sector, amplitudes }
    }

    /// The basis state `|j, m⟩`.
    pub fn basis_state(sector: FockSector, two_m: i32) -> Result<Self, SectorError> {
        let idx = sector.index_of(two_m).ok_or(SectorError::IndexOutOfRange {
            two_j: sector.two_j(),
            two_m,
        })?;
        let mut amplitudes = DVector::zeros(sector.dim());
        amplitudes[idx] = Complex64::new(1.0, 0.0);
        Ok(Self { sector, amplitudes })
    }

    pub fn from_real(sector: FockSector, values: &[f64]) -> Self {
        assert_eq!(values.len(), sector.dim());
        let amplitudes =
            DVector::from_iterator(values.len(), values.iter().map(|&v| Complex64::new(v, 0.0)));
        Self { sector, amplitudes }
    }

    pub fn sector(&self) -> FockSector {
        self.sector
    }

    pub fn amplitudes(&self) -> &DVector<Complex64> {
        &self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.norm()
    }

    pub fn normalized(&self) -> Self {
        let n = self.norm();
        Self {
            sector: self.sector,
            amplitudes: &self.amplitudes / Complex64::new(n, 0.0),
        }
    }

    pub fn inner(&self, other: &StateVector) -> Result<Complex64, SectorError> {
        if self.sector != other.sector {
            return Err(SectorError::SectorMismatch(
                self.sector.two_j(),
                other.sector.two_j(),
            ));
        }
        Ok(self.amplitudes.dotc(&other.amplitudes))
    }
}

/// Product of `count` descending integers starting at `from`:
/// `from · (from−1) ⋯ (from−count+1)`, as occupation bookkeeping for
/// repeated annihilation. Returns the product and whether it stayed below
/// the direct-evaluation limit.
fn falling_product(from: u64, count: u32) -> f64 {
    let mut acc = 1.0f64;
    for k in 0..count as u64 {
        acc *= (from - k) as f64;
    }
    acc
}

fn falling_log(from: u64, count: u32) -> f64 {
    let mut acc = 0.0f64;
    for k in 0..count as u64 {
        acc += ((from - k) as f64).ln();
    }
    acc
}

/// Matrix element factor of `a†^p b†^q a^r b^s` acting on `(n_a, n_b)`,
/// or `None` when an annihilator hits zero occupation.
fn monomial_factor(mono: &Monomial, n_a: u64, n_b: u64) -> Option<f64> {
    if n_a < mono.annihilate_a as u64 || n_b < mono.annihilate_b as u64 {
        return None;
    }
    let na_low = n_a - mono.annihilate_a as u64;
    let nb_low = n_b - mono.annihilate_b as u64;
    // √[ n_a!/(n_a−r)! · n_b!/(n_b−s)! · (n_a−r+p)!/(n_a−r)! · (n_b−s+q)!/(n_b−s)! ]
    let direct = falling_product(n_a, mono.annihilate_a)
        * falling_product(n_b, mono.annihilate_b)
        * falling_product(na_low + mono.create_a as u64, mono.create_a)
        * falling_product(nb_low + mono.create_b as u64, mono.create_b);
    if direct <= DIRECT_PRODUCT_LIMIT {
        Some(direct.sqrt())
    } else {
        let log_sum = falling_log(n_a, mono.annihilate_a)
            + falling_log(n_b, mono.annihilate_b)
            + falling_log(na_low + mono.create_a as u64, mono.create_a)
            + falling_log(nb_low + mono.create_b as u64, mono.create_b);
        Some((0.5 * log_sum).exp())
    }
}

/// Matrix of `a†^p b†^q a^r b^s` in the `|j, m⟩` basis.
///
/// Entry `(m', m)` is `⟨j, m'| a†^p b†^q a^r b^s |j, m⟩`; it is nonzero only
/// on the single diagonal with `2m' = 2m + 2(p − r)`.
pub fn monomial_matrix(sector: FockSector, mono: &Monomial) -> Result<SectorOperator, SectorError> {
    if !mono.conserves_number() {
        return Err(SectorError::NonConserving {
            p: mono.create_a,
            q: mono.create_b,
            r: mono.annihilate_a,
            s: mono.annihilate_b,
        });
    }
    let dim = sector.dim();
    let shift = mono.two_m_shift();
    let mut matrix = DMatrix::<Complex64>::zeros(dim, dim);
    for (col, two_m) in sector.two_m_values().enumerate() {
        let Some(row) = sector.index_of(two_m + shift) else {
            continue;
        };
        let (n_a, n_b) = sector.occupations(two_m);
        if let Some(factor) = monomial_factor(mono, n_a, n_b) {
            matrix[(row, col)] = Complex64::new(factor, 0.0);
        }
    }
    Ok(SectorOperator::new(sector, matrix))
}

/// The relative-population operator `m̂ = (a†a − b†b)/2`, diagonal with
/// entries exactly `m`.
pub fn m_operator(sector: FockSector) -> SectorOperator {
    SectorOperator::from_diagonal(sector, |two_m| two_m as f64 / 2.0)
}

/// The total-number operator `n_a + n_b`, a constant `2j` on the sector.
pub fn number_operator(sector: FockSector) -> SectorOperator {
    SectorOperator::from_diagonal(sector, |_| sector.two_j() as f64)
}

/// Expectation value `⟨ψ| op |ψ⟩` of a Hermitian operator.
///
/// The imaginary residue of the quadratic form is discarded when below
/// 1e-10 and reported as an error otherwise, since a larger residue means
/// the operator was not Hermitian to begin with.
pub fn expectation(state: &StateVector, op: &SectorOperator) -> Result<f64, SectorError> {
    if state.sector() != op.sector() {
        return Err(SectorError::SectorMismatch(
            op.sector().two_j(),
            state.sector().two_j(),
        ));
    }
    let value = state.amplitudes().dotc(&(op.matrix() * state.amplitudes()));
    if value.im.abs() > 1e-10 {
        return Err(SectorError::ImaginaryResidue(value.im));
    }
    Ok(value.re)
}
