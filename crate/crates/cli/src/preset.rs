//! Frozen figure presets.
//!
//! Each preset pins one parameter set. The ground-state presets use
//! `j = 100`, `a1 = 100`, `a2 = 1` with `θ = 0.25` (a default chosen to
//! spread the distribution visibly; recorded in the output metadata). The
//! dynamics presets start every particle in one well (`|j, j⟩`) at
//! `θ = 0.2` and run to `1.2·π/a2`.

use std::path::PathBuf;
use std::str::FromStr;

use twomode::model::ModelParams;
use twomode::sector::FockSector;

use crate::config::{Command, InitialStateSpec, RunConfig, SweepParam};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PresetId {
    Fig2a,
    Fig2b,
    Fig3a,
    Fig3b,
    Fig3c,
}

impl PresetId {
    pub const ALL: [PresetId; 5] = [
        PresetId::Fig2a,
        PresetId::Fig2b,
        PresetId::Fig3a,
        PresetId::Fig3b,
        PresetId::Fig3c,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            PresetId::Fig2a => "fig2a",
            PresetId::Fig2b => "fig2b",
            PresetId::Fig3a => "fig3a",
            PresetId::Fig3b => "fig3b",
            PresetId::Fig3c => "fig3c",
        }
    }

    /// The frozen run configuration; only the output path may be
    /// overridden afterwards.
    pub fn frozen_config(&self) -> RunConfig {
        let sector = FockSector::from_two_j(200);
        let ground = |a3: f64| ModelParams::new(100.0, 1.0, a3, 0.25, sector).unwrap();
        let dynamics = |a3: f64| ModelParams::new(100.0, 1.0, a3, 0.2, sector).unwrap();
        let t_max = 1.2 * std::f64::consts::PI;
        let base = RunConfig {
            command: Command::Ground,
            preset: Some(*self),
            params: ground(0.0),
            initial_state: InitialStateSpec::AllInA,
            t_max,
            n_samples: 2000,
            sweep: None,
            output_path: PathBuf::from(format!("{}.csv", self.name())),
            seed: 42,
            sets: 20,
        };
        match self {
            PresetId::Fig2a => base,
            PresetId::Fig2b => RunConfig {
                params: ground(0.0035),
                ..base
            },
            PresetId::Fig3a => RunConfig {
                command: Command::Dynamics,
                params: dynamics(0.0),
                ..base
            },
            PresetId::Fig3b => RunConfig {
                command: Command::Dynamics,
                params: dynamics(0.01),
                ..base
            },
            PresetId::Fig3c => RunConfig {
                command: Command::Sweep,
                params: dynamics(0.0),
                sweep: Some((
                    SweepParam::A3,
                    vec![0.0, 1.0 / 400.0, 1.0 / 200.0, 1.0 / 100.0],
                )),
                ..base
            },
        }
    }
}

impl FromStr for PresetId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        PresetId::ALL
            .iter()
            .find(|id| id.name() == s)
            .copied()
            .ok_or_else(|| {
                format!("unknown preset {s:?}; expected fig2a, fig2b, fig3a, fig3b or fig3c")
            })
    }
}
