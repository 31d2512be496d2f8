//! Seeded parameter sampling for validation batches.
//!
//! A small SplitMix64 generator keeps the validation runs byte-for-byte
//! reproducible without pulling in an external PRNG whose stream might
//! change between releases.

use crate::model::ModelParams;
use crate::sector::FockSector;

/// SplitMix64: tiny, fast, and stable across platforms.
#[derive(Debug, Clone)]
pub struct ParamSampler {
    state: u64,
}

impl ParamSampler {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    /// Uniform in `[0, 1)`.
    pub fn next_f64(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 / (1u64 << 53) as f64
    }

    pub fn uniform(&mut self, low: f64, high: f64) -> f64 {
        low + (high - low) * self.next_f64()
    }

    /// Desk-scale model parameters on the given sector: strengths of order
    /// one, phase clear of the trivial endpoints, and `|a3|` bounded away
    /// from zero so three-body terms actually participate.
    pub fn model_params(&mut self, sector: FockSector) -> ModelParams {
        let a1 = self.uniform(-2.0, 2.0);
        let a2 = self.uniform(-1.5, 1.5);
        let magnitude = self.uniform(0.05, 0.75);
        let a3 = if self.next_u64().is_multiple_of(2) {
            magnitude
        } else {
            -magnitude
        };
        let theta = self.uniform(0.05, 3.1);
        ModelParams::new(a1, a2, a3, theta, sector).expect("sampled parameters are finite")
    }
}
