//! Seeded pseudo-random inputs for verification sweeps.

use crate::direction::{CompoundLabel, Direction};
use crate::operators::{MeasurementSpec, OutcomeValues};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::{PI, TAU};

/// Deterministic source of directions, labels and measurement specs.
pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Self { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    /// Angles uniform over `[0, π] × [0, 2π)`.
    pub fn direction(&mut self) -> Direction {
        let theta = self.rng.random_range(0.0..=PI);
        let phi = self.rng.random_range(0.0..TAU);
        Direction::new(theta, phi).expect("finite sampled angles")
    }

    pub fn label(&mut self) -> CompoundLabel {
        let axis = self.direction();
        CompoundLabel::all(axis)[self.rng.random_range(0..4)]
    }

    /// Outcome values uniform in `[-2, 2]`.
    pub fn outcome_values(&mut self) -> OutcomeValues {
        let plus = self.rng.random_range(-2.0..=2.0);
        let minus = self.rng.random_range(-2.0..=2.0);
        OutcomeValues::new(plus, minus).expect("finite sampled values")
    }

    pub fn spec(&mut self) -> MeasurementSpec {
        let c1 = self.direction();
        let c2 = self.direction();
        MeasurementSpec::new(c1, c2, self.outcome_values(), self.outcome_values())
    }

    /// `n × n` grid: every pairing of `n` sampled `d` with `n` sampled `f`.
    pub fn intermediate_grid(&mut self, n: usize) -> Vec<(Direction, Direction)> {
        let ds: Vec<_> = (0..n).map(|_| self.direction()).collect();
        let fs: Vec<_> = (0..n).map(|_| self.direction()).collect();
        cartesian(&ds, &fs)
    }
}

pub fn cartesian(ds: &[Direction], fs: &[Direction]) -> Vec<(Direction, Direction)> {
    ds.iter()
        .flat_map(|&d| fs.iter().map(move |&f| (d, f)))
        .collect()
}
