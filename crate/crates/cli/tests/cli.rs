//! Configuration parsing and end-to-end run behavior.

use std::path::PathBuf;

use twomode_cli::config::{
    build_config, parse_config, Command, ConfigError, InitialStateSpec, Overrides,
};
use twomode_cli::preset::PresetId;
use twomode_cli::run::{run, validation_reports, EXIT_OK};

fn temp_dir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("twomode-cli-{tag}-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn minimal_document_gets_defaults() {
    let config = parse_config("command: spectrum\na1: 100\na2: 1\na3: 0\n").unwrap();
    assert_eq!(config.command, Command::Spectrum);
    assert_eq!(config.params.a1, 100.0);
    assert_eq!(config.params.theta, 0.25);
    assert_eq!(config.params.sector.spin(), 100.0);
    assert_eq!(config.n_samples, 2000);
    assert!((config.t_max - 1.2 * std::f64::consts::PI).abs() < 1e-12);
    assert_eq!(config.initial_state, InitialStateSpec::AllInA);
    assert_eq!(config.output_path, PathBuf::from("spectrum.csv"));
}

#[test]
fn type_error_names_the_key() {
    let err = parse_config("command: spectrum\na1: 100\na2: 1\na3: x\n").unwrap_err();
    match err {
        ConfigError::BadValue { key, .. } => assert_eq!(key, "a3"),
        other => panic!("expected BadValue, got {other:?}"),
    }
}

#[test]
fn unknown_keys_are_listed() {
    let err =
        parse_config("command: spectrum\na1: 1\na2: 1\na3: 0\nbogus: 3\nwhat: x\n").unwrap_err();
    match err {
        ConfigError::UnknownKeys(keys) => assert_eq!(keys, vec!["bogus", "what"]),
        other => panic!("expected UnknownKeys, got {other:?}"),
    }
}

#[test]
fn preset_document_resolves_frozen_parameters() {
    let config = parse_config("command: preset\npreset: fig2b\n").unwrap();
    assert_eq!(config.params.a1, 100.0);
    assert_eq!(config.params.a2, 1.0);
    assert_eq!(config.params.a3, 0.0035);
    assert_eq!(config.params.sector.spin(), 100.0);
}

#[test]
fn flags_override_document_values() {
    let overrides = Overrides {
        a3: Some(0.5),
        theta: Some(1.0),
        ..Default::default()
    };
    let config = build_config(
        Some("command: spectrum\na1: 1\na2: 1\na3: 0\ntheta: 0.3\n"),
        &overrides,
    )
    .unwrap();
    assert_eq!(config.params.a3, 0.5);
    assert_eq!(config.params.theta, 1.0);
}

#[test]
fn command_comes_from_cli_or_document() {
    let err = build_config(Some("a1: 1\na2: 1\na3: 0\n"), &Overrides::default()).unwrap_err();
    assert!(matches!(err, ConfigError::NoCommand));
    let overrides = Overrides {
        command: Some(Command::Ground),
        ..Default::default()
    };
    let config = build_config(Some("a1: 1\na2: 1\na3: 0\nj: 4\n"), &overrides).unwrap();
    assert_eq!(config.command, Command::Ground);
}

#[test]
fn missing_parameters_are_reported() {
    let err = parse_config("command: ground\na1: 1\na2: 1\n").unwrap_err();
    match err {
        ConfigError::Missing { key, .. } => assert_eq!(key, "a3"),
        other => panic!("expected Missing, got {other:?}"),
    }
}

#[test]
fn initial_state_bounds_are_checked() {
    let err =
        parse_config("command: dynamics\na1: 1\na2: 1\na3: 0\nj: 4\ninitial_state: fock(9)\n")
            .unwrap_err();
    match err {
        ConfigError::BadValue { key, .. } => assert_eq!(key, "initial_state"),
        other => panic!("expected BadValue, got {other:?}"),
    }
    let config = parse_config(
        "command: dynamics\na1: 1\na2: 1\na3: 0\nj: 4\ninitial_state: eigenstate(-2)\n",
    )
    .unwrap();
    assert_eq!(config.initial_state, InitialStateSpec::Eigenstate(-2.0));
}

#[test]
fn dynamics_with_zero_a2_needs_explicit_t_max() {
    let err = parse_config("command: dynamics\na1: 1\na2: 0\na3: 0.1\nj: 4\n").unwrap_err();
    assert!(matches!(err, ConfigError::Missing { key: "t_max", .. }));
    let config =
        parse_config("command: dynamics\na1: 1\na2: 0\na3: 0.1\nj: 4\nt_max: 3\n").unwrap();
    assert_eq!(config.t_max, 3.0);
}

#[test]
fn fig2a_run_writes_expected_distribution() {
    let dir = temp_dir("fig2a");
    let mut config = PresetId::Fig2a.frozen_config();
    config.output_path = dir.join("fig2a.csv");
    assert_eq!(run(&config).unwrap(), EXIT_OK);
    let text = std::fs::read_to_string(&config.output_path).unwrap();
    assert!(text.contains("# ground_m: -50"));
    assert!(text.contains("# regime: local-minimum"));
    let peaks_line = text
        .lines()
        .find(|l| l.starts_with("# peaks_above_"))
        .expect("peaks metadata present");
    let peaks: usize = peaks_line.rsplit(' ').next().unwrap().parse().unwrap();
    assert!(peaks >= 3, "fig2a should be multi-peak, got {peaks}");

    // rows are m,P with the maximum at the classical turning point
    let rows: Vec<(f64, f64)> = text
        .lines()
        .filter(|l| !l.starts_with('#') && !l.starts_with('m'))
        .map(|l| {
            let (m, p) = l.split_once(',').unwrap();
            (m.parse().unwrap(), p.parse().unwrap())
        })
        .collect();
    assert_eq!(rows.len(), 201);
    let total: f64 = rows.iter().map(|(_, p)| p).sum();
    assert!((total - 1.0).abs() < 1e-9);
    let argmax = rows
        .iter()
        .cloned()
        .max_by(|a, b| a.1.partial_cmp(&b.1).unwrap())
        .unwrap();
    assert_eq!(argmax.0, -68.0);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn fig3a_run_shows_collapse_and_revival() {
    let dir = temp_dir("fig3a");
    let mut config = PresetId::Fig3a.frozen_config();
    config.output_path = dir.join("fig3a.csv");
    assert_eq!(run(&config).unwrap(), EXIT_OK);
    let text = std::fs::read_to_string(&config.output_path).unwrap();
    let rows: Vec<(f64, f64)> = text
        .lines()
        .filter(|l| !l.starts_with('#') && !l.starts_with('t'))
        .map(|l| {
            let (t, v) = l.split_once(',').unwrap();
            (t.parse().unwrap(), v.parse().unwrap())
        })
        .collect();
    assert_eq!(rows.len(), 2000);
    let window = std::f64::consts::PI / 50.0;
    let deviation = |center: f64| -> f64 {
        let values: Vec<f64> = rows
            .iter()
            .filter(|(t, _)| (t - center).abs() <= window / 2.0)
            .map(|(_, v)| *v)
            .collect();
        let mean = values.iter().sum::<f64>() / values.len() as f64;
        values.iter().map(|v| (v - mean).abs()).fold(0.0, f64::max)
    };
    let initial = deviation(window / 2.0);
    let collapsed = deviation(std::f64::consts::PI / 2.0 * 0.63);
    let revival = deviation(std::f64::consts::PI);
    assert!(
        collapsed < 0.3 * initial,
        "collapse: {collapsed} vs initial {initial}"
    );
    assert!(
        revival > 0.9 * initial,
        "revival: {revival} vs initial {initial}"
    );
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn validation_run_passes_and_reports() {
    let config =
        parse_config("command: validate\nj: 10\nsets: 20\nseed: 7\noutput: /dev/null\n").unwrap();
    let reports = validation_reports(&config);
    assert_eq!(reports.len(), 40);
    for report in &reports {
        assert!(report.passed, "{report}");
        let line = report.to_string();
        assert_eq!(line.split('\t').count(), 6);
    }
}

#[test]
fn unwritable_output_is_a_computation_error() {
    let config = parse_config(
        "command: spectrum\na1: 1\na2: 1\na3: 0\nj: 4\noutput: /nonexistent-dir/out.csv\n",
    )
    .unwrap();
    assert!(matches!(
        run(&config),
        Err(twomode_cli::run::RunError::Io { .. })
    ));
}

#[test]
fn sweep_columns_follow_the_sweep_order() {
    let dir = temp_dir("sweep");
    let out = dir.join("sweep.csv");
    let config = parse_config(&format!(
        "command: sweep\na1: 2\na2: 0.5\na3: 0\nj: 6\nn_samples: 4\nt_max: 1\nsweep: a3 = 0, 0.05\noutput: {}\n",
        out.display()
    ))
    .unwrap();
    assert_eq!(run(&config).unwrap(), EXIT_OK);
    let text = std::fs::read_to_string(&out).unwrap();
    let header = text.lines().find(|l| l.starts_with("t,")).unwrap();
    assert_eq!(header, "t,m_expect,m_expect_a3=0.05");
    let first_row = text.lines().find(|l| l.starts_with("0.")).unwrap();
    assert_eq!(first_row.split(',').count(), 3);
    std::fs::remove_dir_all(&dir).ok();
}
