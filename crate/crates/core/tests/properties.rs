//! Property tests for the structural invariants: Hermiticity, number
//! conservation, ground-index optimality, rotation-matrix symmetries and
//! trajectory bounds.

use nalgebra::DVector;
use num_complex::Complex64;
use proptest::prelude::*;

use twomode::dynamics::population_trajectory;
use twomode::model::{assemble_h3, ModelParams};
use twomode::sector::{monomial_matrix, number_operator, FockSector, Monomial, StateVector};
use twomode::spectral::{energy_levels, ground_index};
use twomode::wigner::{d_column, wigner_d};

fn model_params() -> impl Strategy<Value = (f64, f64, f64, f64)> {
    (
        -2.0..2.0f64,
        -1.5..1.5f64,
        -0.8..0.8f64,
        0.0..std::f64::consts::TAU - 1e-9,
    )
}

fn params_on(two_j: u32, a: (f64, f64, f64, f64)) -> ModelParams {
    ModelParams::new(a.0, a.1, a.2, a.3, FockSector::from_two_j(two_j)).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn assembled_hamiltonian_is_hermitian(a in model_params(), two_j in 0u32..=20) {
        let h3 = assemble_h3(&params_on(two_j, a));
        prop_assert!(h3.hermiticity_residual() <= 1e-12);
    }

    #[test]
    fn assembled_hamiltonian_commutes_with_number(a in model_params(), two_j in 0u32..=16) {
        let p = params_on(two_j, a);
        let h3 = assemble_h3(&p);
        let n = number_operator(p.sector);
        let commutator = h3.matrix() * n.matrix() - n.matrix() * h3.matrix();
        let max = commutator.iter().map(|z| z.norm()).fold(0.0, f64::max);
        prop_assert!(max <= 1e-12);
    }

    #[test]
    fn ground_index_is_the_grid_argmin(a in model_params(), two_j in 0u32..=60) {
        let p = params_on(two_j, a);
        let (ground_two_m, _) = ground_index(&p);
        let levels = energy_levels(&p);
        let idx = p.sector.index_of(ground_two_m).unwrap();
        let best = levels.iter().cloned().fold(f64::INFINITY, f64::min);
        prop_assert!(levels[idx] <= best + 1e-12 * best.abs().max(1.0));
    }

    #[test]
    fn monomial_adjoint_is_conjugate_transpose(
        powers in (0u32..=3, 0u32..=3, 0u32..=3),
        two_j in 0u32..=14,
    ) {
        let (p, q, r) = powers;
        let total = p + q;
        prop_assume!(total >= r);
        let mono = Monomial::new(p, q, r, total - r);
        let sector = FockSector::from_two_j(two_j);
        let direct = monomial_matrix(sector, &mono).unwrap();
        let swapped = monomial_matrix(sector, &mono.adjoint()).unwrap();
        let residual = (direct.matrix().adjoint() - swapped.matrix())
            .iter()
            .map(|z| z.norm())
            .fold(0.0, f64::max);
        prop_assert!(residual <= 1e-12);
    }

    #[test]
    fn rotation_columns_are_normalized(two_j in 0u32..=80, theta in 0.0..6.2f64, col in 0.0..1.0f64) {
        let two_m = {
            let steps = two_j as f64 * col;
            -(two_j as i32) + 2 * (steps as i32)
        };
        let column = d_column(two_j, two_m, theta).unwrap();
        let total: f64 = column.iter().map(|d| d * d).sum();
        prop_assert!((total - 1.0).abs() < 1e-10, "norm² = {total}");
    }

    #[test]
    fn rotation_transpose_symmetry(two_j in 0u32..=40, theta in 0.0..6.2f64, picks in (0.0..1.0f64, 0.0..1.0f64)) {
        let pick = |frac: f64| -(two_j as i32) + 2 * ((two_j as f64 * frac) as i32);
        let (two_mp, two_m) = (pick(picks.0), pick(picks.1));
        let direct = wigner_d(two_j, two_mp, two_m, theta).unwrap();
        let swapped = wigner_d(two_j, two_m, two_mp, theta).unwrap();
        let sign = if ((two_m - two_mp) / 2).rem_euclid(2) == 1 { -1.0 } else { 1.0 };
        prop_assert!((direct - sign * swapped).abs() < 1e-10);
    }

    #[test]
    fn population_stays_within_the_sector_bound(
        a in model_params(),
        two_j in 1u32..=12,
        seed in 0u64..1000,
        t in 0.0..20.0f64,
    ) {
        let p = params_on(two_j, a);
        let mut sampler = twomode::sample::ParamSampler::new(seed);
        let amplitudes = DVector::from_iterator(
            p.sector.dim(),
            (0..p.sector.dim()).map(|_| {
                Complex64::new(sampler.uniform(-1.0, 1.0), sampler.uniform(-1.0, 1.0))
            }),
        );
        let psi0 = StateVector::new(p.sector, amplitudes).normalized();
        let trajectory = population_trajectory(&p, &psi0, &[0.0, t]).unwrap();
        for value in &trajectory.values {
            prop_assert!(value.abs() <= p.sector.spin() + 1e-9);
        }
    }
}
