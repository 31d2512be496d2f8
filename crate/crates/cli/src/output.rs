//! Deterministic output writers.
//!
//! Numbers are printed with 17 significant digits in scientific notation so
//! identical runs produce byte-identical files. Metadata travels in `#`
//! comment lines ahead of the CSV header.

use std::fmt::Write as _;

use twomode::model::ModelParams;
use twomode::oracle::ValidationReport;
use twomode::spectral::{Regime, SpectrumResult};
use twomode::wigner::DistributionResult;
use twomode::TrajectoryResult;

/// 17 significant digits, scientific: the determinism contract.
pub fn fmt_f64(value: f64) -> String {
    format!("{value:.16e}")
}

fn metadata_params(out: &mut String, params: &ModelParams) {
    let _ = writeln!(out, "# a1: {}", fmt_f64(params.a1));
    let _ = writeln!(out, "# a2: {}", fmt_f64(params.a2));
    let _ = writeln!(out, "# a3: {}", fmt_f64(params.a3));
    let _ = writeln!(out, "# theta: {}", fmt_f64(params.theta));
    let _ = writeln!(out, "# j: {}", params.sector.spin());
}

fn regime_name(regime: Regime) -> &'static str {
    match regime {
        Regime::LocalMinimum => "local-minimum",
        Regime::ExtremePoint => "extreme-point",
    }
}

/// CSV of the analytic spectrum: header `m,value`, one row per `m`
/// ascending. `value` is the population-form `E_m` (the convention the
/// ground-state figures use; the assembled operator's spectrum is the same
/// cubic evaluated at `2m`, plus a shift).
pub fn spectrum_csv(title: &str, params: &ModelParams, spectrum: &SpectrumResult) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# command: {title}");
    metadata_params(&mut out, params);
    let _ = writeln!(out, "# ground_m: {}", spectrum.ground_two_m as f64 / 2.0);
    let _ = writeln!(out, "# regime: {}", regime_name(spectrum.regime));
    let _ = writeln!(
        out,
        "# discriminant_3a1a3_over_a2sq: {}",
        fmt_f64(spectrum.discriminant)
    );
    let _ = writeln!(
        out,
        "# value_convention: population form A1*m + A2*m^2 + A3*m^3"
    );
    let _ = writeln!(out, "m,value");
    for (two_m, energy) in params.sector.two_m_values().zip(&spectrum.energies) {
        let _ = writeln!(out, "{},{}", fmt_f64(two_m as f64 / 2.0), fmt_f64(*energy));
    }
    out
}

/// CSV of the ground-state distribution: header `m,value` with
/// `value = P(m)`. Extra metadata lines are emitted verbatim after the
/// parameter block.
pub fn distribution_csv(
    title: &str,
    params: &ModelParams,
    regime: Regime,
    dist: &DistributionResult,
    peak_floor: f64,
    extra_metadata: &[&str],
) -> String {
    let peaks = twomode::wigner::local_maxima_above(&dist.probabilities, peak_floor);
    let mut out = String::new();
    let _ = writeln!(out, "# command: {title}");
    metadata_params(&mut out, params);
    for line in extra_metadata {
        let _ = writeln!(out, "# {line}");
    }
    let _ = writeln!(out, "# ground_m: {}", dist.ground_two_m as f64 / 2.0);
    let _ = writeln!(out, "# regime: {}", regime_name(regime));
    let _ = writeln!(out, "# peaks_above_{peak_floor:e}: {peaks}");
    let _ = writeln!(out, "m,value");
    for (m, p) in dist.m_values().into_iter().zip(&dist.probabilities) {
        let _ = writeln!(out, "{},{}", fmt_f64(m), fmt_f64(*p));
    }
    out
}

/// CSV of one or more population trajectories on a shared time grid:
/// header `t,m_expect[,m_expect_<param>=<value>]*`. The first trajectory
/// column is always plain `m_expect`; its parameter value (for sweeps) is
/// recorded in the metadata.
pub fn trajectory_csv(
    title: &str,
    params: &ModelParams,
    initial_label: &str,
    sweep_label: Option<(&str, &[f64])>,
    trajectories: &[TrajectoryResult],
) -> String {
    assert!(!trajectories.is_empty());
    let times = &trajectories[0].times;
    let mut out = String::new();
    let _ = writeln!(out, "# command: {title}");
    metadata_params(&mut out, params);
    let _ = writeln!(out, "# initial_state: {initial_label}");
    let mut header = String::from("t,m_expect");
    if let Some((name, values)) = sweep_label {
        let _ = writeln!(out, "# sweep: {name} = {:?}", values);
        let _ = writeln!(out, "# m_expect column: {name}={}", values[0]);
        for value in &values[1..] {
            let _ = write!(header, ",m_expect_{name}={value}");
        }
    }
    let _ = writeln!(out, "{header}");
    for (idx, t) in times.iter().enumerate() {
        let _ = write!(out, "{}", fmt_f64(*t));
        for trajectory in trajectories {
            let _ = write!(out, ",{}", fmt_f64(trajectory.values[idx]));
        }
        let _ = writeln!(out);
    }
    out
}

/// Tab-separated validation report, one line per check.
pub fn report_lines(reports: &[ValidationReport]) -> String {
    let mut out = String::new();
    for report in reports {
        let _ = writeln!(out, "{report}");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_formatting_is_scientific_17_digits() {
        assert_eq!(fmt_f64(1.0), "1.0000000000000000e0");
        assert_eq!(fmt_f64(-50.0), "-5.0000000000000000e1");
        assert_eq!(fmt_f64(0.0035), "3.5000000000000001e-3");
    }
}
