//! Cross-module validation of the model's central structural claim: the
//! assembled Hamiltonian is the rotated image of the diagonal `H0` up to a
//! scalar shift, and the analytic spectrum and eigenstates follow from it.

use twomode::model::{
    assemble_from_table, assemble_h3, heuristic_coefficient_table, similarity_shift, ModelParams,
};
use twomode::oracle::{
    dense_eigensolve, displacement_matrix, validate_similarity, validate_spectrum,
};
use twomode::sample::ParamSampler;
use twomode::sector::FockSector;
use twomode::spectral::{eigenstate_construct, operator_energy_levels};

fn params(a1: f64, a2: f64, a3: f64, theta: f64, two_j: u32) -> ModelParams {
    ModelParams::new(a1, a2, a3, theta, FockSector::from_two_j(two_j)).unwrap()
}

#[test]
fn similarity_holds_for_random_parameters() {
    let mut sampler = ParamSampler::new(0x5171);
    for trial in 0..40 {
        let two_j = 1 + (trial % 20) as u32;
        let p = sampler.model_params(FockSector::from_two_j(two_j));
        let report = validate_similarity(&p);
        assert!(report.passed, "trial {trial}: {report}");
        assert!(report.notes.contains("convention=operator-2m"), "{report}");
    }
}

#[test]
fn heuristic_table_breaks_similarity_with_three_body_terms() {
    let p = params(0.8, 0.5, 0.4, 1.1, 10);
    let h_exact = assemble_h3(&p);
    let h_heuristic = assemble_from_table(p.sector, &heuristic_coefficient_table(&p));
    let difference = (h_exact.matrix() - h_heuristic.matrix())
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max);
    assert!(
        difference > 1e-2,
        "tables should differ when a3 ≠ 0, got {difference}"
    );

    let d = displacement_matrix(p.sector, p.theta);
    let h0 = twomode::model::assemble_h0(&p);
    let rotated = d.matrix() * h0.matrix() * d.matrix().adjoint();
    let raw = h_heuristic.matrix() - rotated;
    let shift = raw.trace().re / p.sector.dim() as f64;
    let residual = (0..p.sector.dim())
        .flat_map(|r| (0..p.sector.dim()).map(move |c| (r, c)))
        .map(|(r, c)| {
            let mut v = raw[(r, c)];
            if r == c {
                v.re -= shift;
            }
            v.norm()
        })
        .fold(0.0, f64::max);
    assert!(
        residual > 1e-9 * h_heuristic.max_norm(),
        "heuristic table unexpectedly satisfies the rotation identity"
    );
}

#[test]
fn spectrum_matches_oracle_for_various_sizes() {
    let mut sampler = ParamSampler::new(7);
    for &two_j in &[4u32, 10, 20, 40] {
        for _ in 0..5 {
            let p = sampler.model_params(FockSector::from_two_j(two_j));
            let report = validate_spectrum(&p);
            assert!(report.passed, "2j = {two_j}: {report}");
        }
    }
}

#[test]
fn eigenstates_satisfy_the_eigenvalue_equation() {
    let mut sampler = ParamSampler::new(11);
    for two_j in [2u32, 5, 9, 12] {
        let p = sampler.model_params(FockSector::from_two_j(two_j));
        let h3 = assemble_h3(&p);
        let shift = similarity_shift(&p);
        let energies = operator_energy_levels(&p);
        for (idx, two_m) in p.sector.two_m_values().enumerate() {
            let state = eigenstate_construct(&p, two_m).unwrap();
            let h_psi = h3.apply(&state).unwrap();
            let expected = energies[idx] + shift;
            let residual: f64 = h_psi
                .amplitudes()
                .iter()
                .zip(state.amplitudes().iter())
                .map(|(got, base)| (got - base * expected).norm())
                .fold(0.0, f64::max);
            assert!(
                residual <= 1e-9 * h3.max_norm().max(1.0),
                "2j={two_j} 2m={two_m}: residual {residual:.3e}"
            );
        }
    }
}

#[test]
fn analytic_eigenvalues_match_dense_solver_with_shift() {
    // j = 2 at strongly asymmetric parameters: eigenvalues are E_m + c
    let p = params(100.0, 1.0, 0.01, 0.3, 4);
    let h3 = assemble_h3(&p);
    let (eigenvalues, _) = dense_eigensolve(&h3).unwrap();
    let mut analytic: Vec<f64> = operator_energy_levels(&p)
        .into_iter()
        .map(|e| e + similarity_shift(&p))
        .collect();
    analytic.sort_by(|a, b| a.partial_cmp(b).unwrap());
    for (got, want) in eigenvalues.iter().zip(&analytic) {
        assert!(
            (got - want).abs() <= 1e-9 * h3.max_norm(),
            "{got} vs {want}"
        );
    }
}
