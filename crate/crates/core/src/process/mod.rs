//! Grid-based simulation of the stochastic processes under study: Poisson
//! counts, compound Poisson sums, subordinators, and the compound Cox
//! process obtained by running a compound Poisson process on a subordinated
//! clock.

mod jumps;
mod scheme;
mod simulate;

use std::io::Write;

use rand::Rng;
use rand_distr::{Distribution, Poisson};
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use jumps::{JumpKind, JumpMoments, JumpScheme};
pub use scheme::{MomentCertificate, SubordinatorKind, SubordinatorSampler, SubordinatorScheme};
pub use simulate::{
    increment_stationarity_check, simulate_compound_poisson, simulate_cox_marginal,
    simulate_subordinator,
};

#[derive(Debug, Clone, Error)]
pub enum ProcessError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("unsupported scheme kind: {0}")]
    UnsupportedKind(String),
}

/// Strictly increasing time points on [0, 1] with fixed endpoints 0 and 1.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TimeGrid {
    points: Vec<f64>,
}

impl TimeGrid {
    /// Uniform grid with `cells` equal steps (default resolution 2^10).
    pub fn uniform(cells: usize) -> Self {
        assert!(cells >= 1);
        let points = (0..=cells).map(|i| i as f64 / cells as f64).collect();
        Self { points }
    }

    pub fn from_points(points: Vec<f64>) -> Result<Self, ProcessError> {
        if points.len() < 2 || points[0] != 0.0 || *points.last().unwrap() != 1.0 {
            return Err(ProcessError::Domain(
                "time grid must start at 0 and end at 1".into(),
            ));
        }
        if points.windows(2).any(|w| w[1] <= w[0]) {
            return Err(ProcessError::Domain(
                "time grid must be strictly increasing".into(),
            ));
        }
        Ok(Self { points })
    }

    /// Uniform grid refined to contain the given interior times exactly.
    pub fn uniform_with(cells: usize, times: &[f64]) -> Result<Self, ProcessError> {
        let mut points: Vec<f64> = (0..=cells).map(|i| i as f64 / cells as f64).collect();
        for &t in times {
            if !(0.0..=1.0).contains(&t) {
                return Err(ProcessError::Domain(format!(
                    "grid times must lie in [0,1], got {t}"
                )));
            }
            points.push(t);
        }
        points.sort_unstable_by(f64::total_cmp);
        points.dedup();
        Self::from_points(points)
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn resolution(&self) -> usize {
        self.points.len() - 1
    }

    pub fn index_of(&self, t: f64) -> Option<usize> {
        self.points.iter().position(|&p| p == t)
    }
}

/// A càdlàg step path sampled on a [`TimeGrid`]; `values[0] = 0` always,
/// and subordinator paths are nondecreasing.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SamplePath {
    pub grid: TimeGrid,
    pub values: Vec<f64>,
}

impl SamplePath {
    pub fn new(grid: TimeGrid, values: Vec<f64>) -> Self {
        assert_eq!(grid.points().len(), values.len());
        assert_eq!(values[0], 0.0, "paths start at 0");
        Self { grid, values }
    }

    pub fn value_at(&self, t: f64) -> Option<f64> {
        self.grid.index_of(t).map(|i| self.values[i])
    }

    pub fn terminal(&self) -> f64 {
        *self.values.last().unwrap()
    }

    pub fn is_nondecreasing(&self) -> bool {
        self.values.windows(2).all(|w| w[1] >= w[0])
    }

    /// CSV serialization with header `t,value`, shortest round-trip floats.
    pub fn write_csv<W: Write>(&self, mut w: W) -> std::io::Result<()> {
        writeln!(w, "t,value")?;
        for (t, v) in self.grid.points().iter().zip(&self.values) {
            writeln!(w, "{t},{v}")?;
        }
        Ok(())
    }
}

/// Exact Poisson(λ) count for any finite λ ≥ 0 (inversion below λ = 12,
/// log-gamma rejection above; never a normal approximation).
pub fn poisson_sample<R: Rng + ?Sized>(mean: f64, rng: &mut R) -> Result<u64, ProcessError> {
    if !(mean >= 0.0) || !mean.is_finite() {
        return Err(ProcessError::Domain(format!(
            "Poisson mean must be finite and >= 0, got {mean}"
        )));
    }
    if mean == 0.0 {
        return Ok(0);
    }
    // Counts stay exactly representable below 2^53.
    if mean > 9.0e15 {
        return Err(ProcessError::Domain(format!(
            "Poisson mean {mean} exceeds the exactly representable count range"
        )));
    }
    let draw: f64 = Poisson::new(mean)
        .map_err(|e| ProcessError::Domain(format!("Poisson({mean}): {e}")))?
        .sample(rng);
    Ok(draw as u64)
}
