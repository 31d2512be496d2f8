//! Flat key-value configuration documents and their resolution into a
//! fully-populated run configuration.
//!
//! The schema is one `key: value` pair per line; `#` starts a comment
//! line. Recognized keys:
//!
//! ```text
//! command        spectrum | ground | dynamics | validate | preset | sweep
//! preset         fig2a | fig2b | fig3a | fig3b | fig3c
//! a1, a2, a3     tunneling strengths (required for parameter commands)
//! theta          tunneling phase in [0, 2π), default 0.25
//! j              sector spin, non-negative half-integer, default 100
//! initial_state  all-in-a | all-in-b | fock(m) | eigenstate(m)
//! t_max          trajectory end time, default 1.2·π/a2
//! n_samples      trajectory samples, default 2000 (≥ 2)
//! sweep          <param>=v1,v2,…  with <param> one of a1, a2, a3, theta
//! output         output file path, default <command>.csv
//! seed           random seed for validate, default 42
//! sets           number of validate parameter sets, default 20
//! ```
//!
//! Command-line flags override document values; preset parameter sets are
//! frozen and ignore parameter overrides.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::str::FromStr;

use thiserror::Error;
use twomode::model::{ModelError, ModelParams};
use twomode::sector::FockSector;

use crate::preset::PresetId;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("unknown configuration keys: {}", .0.join(", "))]
    UnknownKeys(Vec<String>),
    #[error("invalid value for key {key}: {constraint}")]
    BadValue { key: String, constraint: String },
    #[error("missing key {key} ({needed_for})")]
    Missing {
        key: &'static str,
        needed_for: String,
    },
    #[error("no command given (positional argument or `command:` in the config file)")]
    NoCommand,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Command {
    Spectrum,
    Ground,
    Dynamics,
    Validate,
    Preset,
    Sweep,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Spectrum => "spectrum",
            Command::Ground => "ground",
            Command::Dynamics => "dynamics",
            Command::Validate => "validate",
            Command::Preset => "preset",
            Command::Sweep => "sweep",
        }
    }
}

impl FromStr for Command {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "spectrum" => Ok(Command::Spectrum),
            "ground" => Ok(Command::Ground),
            "dynamics" => Ok(Command::Dynamics),
            "validate" => Ok(Command::Validate),
            "preset" => Ok(Command::Preset),
            "sweep" => Ok(Command::Sweep),
            other => Err(format!(
                "unknown command {other:?}; expected spectrum, ground, dynamics, validate, preset or sweep"
            )),
        }
    }
}

/// Initial state of a dynamics run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum InitialStateSpec {
    /// Every particle in mode a: the Fock state `|j, +j⟩`.
    AllInA,
    /// Every particle in mode b: `|j, −j⟩`.
    AllInB,
    /// The Fock state `|j, m⟩`.
    Fock(f64),
    /// The model eigenstate built from `|j, m⟩`.
    Eigenstate(f64),
}

impl InitialStateSpec {
    pub fn label(&self) -> String {
        match self {
            InitialStateSpec::AllInA => "all-in-a".into(),
            InitialStateSpec::AllInB => "all-in-b".into(),
            InitialStateSpec::Fock(m) => format!("fock({m})"),
            InitialStateSpec::Eigenstate(m) => format!("eigenstate({m})"),
        }
    }
}

impl FromStr for InitialStateSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "all-in-a" => return Ok(InitialStateSpec::AllInA),
            "all-in-b" => return Ok(InitialStateSpec::AllInB),
            _ => {}
        }
        let parse_arg = |inner: &str| -> Result<f64, String> {
            inner
                .parse::<f64>()
                .map_err(|_| format!("expected a number inside {s:?}"))
        };
        if let Some(inner) = s.strip_prefix("fock(").and_then(|r| r.strip_suffix(')')) {
            return Ok(InitialStateSpec::Fock(parse_arg(inner)?));
        }
        if let Some(inner) = s
            .strip_prefix("eigenstate(")
            .and_then(|r| r.strip_suffix(')'))
        {
            return Ok(InitialStateSpec::Eigenstate(parse_arg(inner)?));
        }
        Err(format!(
            "unknown initial state {s:?}; expected all-in-a, all-in-b, fock(m) or eigenstate(m)"
        ))
    }
}

/// Which model parameter a sweep varies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepParam {
    A1,
    A2,
    A3,
    Theta,
}

impl SweepParam {
    pub fn name(&self) -> &'static str {
        match self {
            SweepParam::A1 => "a1",
            SweepParam::A2 => "a2",
            SweepParam::A3 => "a3",
            SweepParam::Theta => "theta",
        }
    }

    pub fn apply(&self, params: &ModelParams, value: f64) -> Result<ModelParams, ConfigError> {
        let (mut a1, mut a2, mut a3, mut theta) = (params.a1, params.a2, params.a3, params.theta);
        match self {
            SweepParam::A1 => a1 = value,
            SweepParam::A2 => a2 = value,
            SweepParam::A3 => a3 = value,
            SweepParam::Theta => theta = value,
        }
        ModelParams::new(a1, a2, a3, theta, params.sector).map_err(|e| ConfigError::BadValue {
            key: "sweep".into(),
            constraint: e.to_string(),
        })
    }
}

impl FromStr for SweepParam {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "a1" => Ok(SweepParam::A1),
            "a2" => Ok(SweepParam::A2),
            "a3" => Ok(SweepParam::A3),
            "theta" => Ok(SweepParam::Theta),
            other => Err(format!(
                "unknown sweep parameter {other:?}; expected a1, a2, a3 or theta"
            )),
        }
    }
}

/// A fully resolved run: command, model parameters, time grid, output.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub command: Command,
    pub preset: Option<PresetId>,
    pub params: ModelParams,
    pub initial_state: InitialStateSpec,
    pub t_max: f64,
    pub n_samples: usize,
    pub sweep: Option<(SweepParam, Vec<f64>)>,
    pub output_path: PathBuf,
    pub seed: u64,
    pub sets: usize,
}

/// Values supplied on the command line; they take precedence over the
/// configuration document.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub command: Option<Command>,
    pub preset: Option<PresetId>,
    pub a1: Option<f64>,
    pub a2: Option<f64>,
    pub a3: Option<f64>,
    pub theta: Option<f64>,
    pub j: Option<f64>,
    pub out: Option<PathBuf>,
}

const KNOWN_KEYS: &[&str] = &[
    "command",
    "preset",
    "a1",
    "a2",
    "a3",
    "theta",
    "j",
    "initial_state",
    "t_max",
    "n_samples",
    "sweep",
    "output",
    "seed",
    "sets",
];

fn parse_document(text: &str) -> Result<BTreeMap<String, String>, ConfigError> {
    let mut pairs = BTreeMap::new();
    let mut unknown = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((key, value)) = line.split_once(':') else {
            unknown.push(line.to_string());
            continue;
        };
        let key = key.trim().to_string();
        if !KNOWN_KEYS.contains(&key.as_str()) {
            unknown.push(key);
            continue;
        }
        pairs.insert(key, value.trim().to_string());
    }
    if !unknown.is_empty() {
        return Err(ConfigError::UnknownKeys(unknown));
    }
    Ok(pairs)
}

fn typed<T: FromStr>(
    pairs: &BTreeMap<String, String>,
    key: &str,
    constraint: &str,
) -> Result<Option<T>, ConfigError> {
    match pairs.get(key) {
        None => Ok(None),
        Some(raw) => raw
            .parse::<T>()
            .map(Some)
            .map_err(|_| ConfigError::BadValue {
                key: key.into(),
                constraint: format!("{constraint}, got {raw:?}"),
            }),
    }
}

fn typed_str<T: FromStr<Err = String>>(
    pairs: &BTreeMap<String, String>,
    key: &str,
) -> Result<Option<T>, ConfigError> {
    match pairs.get(key) {
        None => Ok(None),
        Some(raw) => raw
            .parse::<T>()
            .map(Some)
            .map_err(|constraint| ConfigError::BadValue {
                key: key.into(),
                constraint,
            }),
    }
}

fn parse_sweep(raw: &str) -> Result<(SweepParam, Vec<f64>), ConfigError> {
    let bad = |constraint: String| ConfigError::BadValue {
        key: "sweep".into(),
        constraint,
    };
    let (name, values) = raw
        .split_once('=')
        .ok_or_else(|| bad("expected <param>=v1,v2,…".into()))?;
    let param = name.trim().parse::<SweepParam>().map_err(bad)?;
    let values: Vec<f64> = values
        .split(',')
        .map(|v| {
            v.trim()
                .parse::<f64>()
                .map_err(|_| bad(format!("non-numeric sweep value {v:?}")))
        })
        .collect::<Result<_, _>>()?;
    if values.is_empty() {
        return Err(bad("needs at least one value".into()));
    }
    if values.iter().any(|v| !v.is_finite()) {
        return Err(bad("sweep values must be finite".into()));
    }
    Ok((param, values))
}

/// Parses a configuration document and resolves it with defaults applied.
pub fn parse_config(text: &str) -> Result<RunConfig, ConfigError> {
    build_config(Some(text), &Overrides::default())
}

/// Parses an optional document, applies command-line overrides, fills
/// defaults, and validates per-command requirements.
pub fn build_config(text: Option<&str>, overrides: &Overrides) -> Result<RunConfig, ConfigError> {
    let pairs = match text {
        Some(text) => parse_document(text)?,
        None => BTreeMap::new(),
    };

    let command = overrides
        .command
        .or(typed_str::<Command>(&pairs, "command")?)
        .ok_or(ConfigError::NoCommand)?;
    let preset = match overrides
        .preset
        .or(typed_str::<PresetId>(&pairs, "preset")?)
    {
        Some(id) => Some(id),
        None if command == Command::Preset => {
            return Err(ConfigError::Missing {
                key: "preset",
                needed_for: "the preset command".into(),
            })
        }
        None => None,
    };

    if command == Command::Preset {
        let id = preset.expect("checked above");
        let mut config = id.frozen_config();
        if let Some(out) = &overrides.out {
            config.output_path = out.clone();
        } else if let Some(path) = pairs.get("output") {
            config.output_path = PathBuf::from(path);
        }
        return Ok(config);
    }

    let require = |key: &'static str, value: Option<f64>| -> Result<f64, ConfigError> {
        value.ok_or(ConfigError::Missing {
            key,
            needed_for: format!("the {} command", command.name()),
        })
    };

    let a1 = overrides
        .a1
        .or(typed::<f64>(&pairs, "a1", "expected a number")?);
    let a2 = overrides
        .a2
        .or(typed::<f64>(&pairs, "a2", "expected a number")?);
    let a3 = overrides
        .a3
        .or(typed::<f64>(&pairs, "a3", "expected a number")?);
    let theta = overrides
        .theta
        .or(typed::<f64>(&pairs, "theta", "expected a number")?)
        .unwrap_or(0.25);
    let j = overrides
        .j
        .or(typed::<f64>(&pairs, "j", "expected a number")?)
        .unwrap_or(100.0);

    let sector = FockSector::from_spin(j).map_err(|_| ConfigError::BadValue {
        key: "j".into(),
        constraint: format!("must be a non-negative half-integer, got {j}"),
    })?;

    let (a1, a2, a3) = match command {
        Command::Validate => (a1.unwrap_or(0.0), a2.unwrap_or(0.0), a3.unwrap_or(0.0)),
        _ => (require("a1", a1)?, require("a2", a2)?, require("a3", a3)?),
    };
    let params = ModelParams::new(a1, a2, a3, theta, sector).map_err(|e| {
        let key = match &e {
            ModelError::NonFinite(name, _) => (*name).to_string(),
            ModelError::PhaseOutOfRange(_) => "theta".to_string(),
        };
        ConfigError::BadValue {
            key,
            constraint: e.to_string(),
        }
    })?;

    let initial_state =
        typed_str::<InitialStateSpec>(&pairs, "initial_state")?.unwrap_or(InitialStateSpec::AllInA);
    if let InitialStateSpec::Fock(m) | InitialStateSpec::Eigenstate(m) = initial_state {
        let two_m = 2.0 * m;
        if two_m.fract() != 0.0 || sector.index_of(two_m as i32).is_none() {
            return Err(ConfigError::BadValue {
                key: "initial_state".into(),
                constraint: format!("m = {m} is not a valid index on the sector j = {j}"),
            });
        }
    }

    let t_max = match typed::<f64>(&pairs, "t_max", "expected a positive number")? {
        Some(value) if value > 0.0 && value.is_finite() => value,
        Some(value) => {
            return Err(ConfigError::BadValue {
                key: "t_max".into(),
                constraint: format!("must be positive and finite, got {value}"),
            })
        }
        None => {
            if matches!(command, Command::Dynamics | Command::Sweep) && a2 == 0.0 {
                return Err(ConfigError::Missing {
                    key: "t_max",
                    needed_for: "a dynamics run with a2 = 0 (the default 1.2·π/a2 is undefined)"
                        .into(),
                });
            }
            1.2 * std::f64::consts::PI / a2.abs().max(f64::MIN_POSITIVE)
        }
    };

    let n_samples = match typed::<usize>(&pairs, "n_samples", "expected an integer ≥ 2")? {
        Some(n) if n >= 2 => n,
        Some(n) => {
            return Err(ConfigError::BadValue {
                key: "n_samples".into(),
                constraint: format!("must be at least 2, got {n}"),
            })
        }
        None => 2000,
    };

    let sweep = match pairs.get("sweep") {
        Some(raw) => Some(parse_sweep(raw)?),
        None if command == Command::Sweep => {
            return Err(ConfigError::Missing {
                key: "sweep",
                needed_for: "the sweep command".into(),
            })
        }
        None => None,
    };
    if let Some((param, values)) = &sweep {
        for &value in values {
            param.apply(&params, value)?;
        }
    }

    let seed = typed::<u64>(&pairs, "seed", "expected an unsigned integer")?.unwrap_or(42);
    let sets = match typed::<usize>(&pairs, "sets", "expected a positive integer")? {
        Some(0) => {
            return Err(ConfigError::BadValue {
                key: "sets".into(),
                constraint: "must be at least 1".into(),
            })
        }
        Some(n) => n,
        None => 20,
    };

    let output_path = overrides
        .out
        .clone()
        .or_else(|| pairs.get("output").map(PathBuf::from))
        .unwrap_or_else(|| PathBuf::from(format!("{}.csv", command.name())));

    Ok(RunConfig {
        command,
        preset,
        params,
        initial_state,
        t_max,
        n_samples,
        sweep,
        output_path,
        seed,
        sets,
    })
}
