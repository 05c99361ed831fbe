//! Path and marginal simulators for the compound Cox process
//! Q(t) = Z(Λ(t)): per grid cell, the clock advances by an independent
//! subordinator increment ΔΛ and the compound Poisson layer adds
//! Poisson(ΔΛ) fresh jumps.

use rand::Rng;

use super::{poisson_sample, JumpScheme, ProcessError, SamplePath, SubordinatorScheme, TimeGrid};
use crate::stats::{ks_two_sample, two_sample_effective_n, KsReport};

/// Simulate the subordinator on a grid. The returned path starts at 0 and
/// is nondecreasing by construction of the increment laws.
pub fn simulate_subordinator<R: Rng + ?Sized>(
    scheme: &SubordinatorScheme,
    grid: &TimeGrid,
    rng: &mut R,
) -> Result<SamplePath, ProcessError> {
    let sampler = scheme.sampler();
    let points = grid.points();
    let mut values = Vec::with_capacity(points.len());
    values.push(0.0);
    let mut level = 0.0;
    for w in points.windows(2) {
        let inc = sampler.increment(w[1] - w[0], rng)?;
        debug_assert!(inc >= 0.0, "subordinator increments are nonnegative");
        level += inc;
        values.push(level);
    }
    Ok(SamplePath::new(grid.clone(), values))
}

/// Run the compound Poisson layer along a realized (nondecreasing)
/// intensity path: the result is the compound Cox path on the same grid.
pub fn simulate_compound_poisson<R: Rng + ?Sized>(
    jumps: &JumpScheme,
    intensity_path: &SamplePath,
    rng: &mut R,
) -> Result<SamplePath, ProcessError> {
    if !intensity_path.is_nondecreasing() {
        return Err(ProcessError::Domain(
            "intensity path must be nondecreasing".into(),
        ));
    }
    let mut values = Vec::with_capacity(intensity_path.values.len());
    values.push(0.0);
    let mut level = 0.0;
    for w in intensity_path.values.windows(2) {
        let n = poisson_sample(w[1] - w[0], rng)?;
        level += jumps.sample_sum(n, rng);
        values.push(level);
    }
    Ok(SamplePath::new(intensity_path.grid.clone(), values))
}

/// One exact draw of Q(1): Λ(1) (path increment or scaled marginal), then
/// Poisson(Λ(1)) jumps.
pub fn simulate_cox_marginal<R: Rng + ?Sized>(
    jumps: &JumpScheme,
    scheme: &SubordinatorScheme,
    rng: &mut R,
) -> Result<f64, ProcessError> {
    let lambda = scheme.sampler().marginal_at_one(rng);
    let n = poisson_sample(lambda, rng)?;
    Ok(jumps.sample_sum(n, rng))
}

/// Two-route check that Q(t₂) - Q(t₁) ≐ Q(t₂ - t₁): the left side comes
/// from a full multi-cell path simulation, the right side from a one-shot
/// marginal of length t₂ - t₁.
pub fn increment_stationarity_check<R: Rng + ?Sized>(
    jumps: &JumpScheme,
    scheme: &SubordinatorScheme,
    t1: f64,
    t2: f64,
    n_samples: usize,
    rng: &mut R,
) -> Result<KsReport, ProcessError> {
    if !(0.0..=1.0).contains(&t1) || !(0.0..=1.0).contains(&t2) || t1 >= t2 {
        return Err(ProcessError::Domain(format!(
            "need 0 <= t1 < t2 <= 1, got t1={t1}, t2={t2}"
        )));
    }
    if !scheme.is_path_capable() {
        return Err(ProcessError::UnsupportedKind(
            "increment stationarity needs a path-capable scheme".into(),
        ));
    }
    let grid = TimeGrid::uniform_with(64, &[t1, t2])?;
    let i1 = grid.index_of(t1).expect("inserted");
    let i2 = grid.index_of(t2).expect("inserted");

    let mut lhs = Vec::with_capacity(n_samples);
    for _ in 0..n_samples {
        let clock = simulate_subordinator(scheme, &grid, rng)?;
        let path = simulate_compound_poisson(jumps, &clock, rng)?;
        lhs.push(path.values[i2] - path.values[i1]);
    }

    let sampler = scheme.sampler();
    let mut rhs = Vec::with_capacity(n_samples);
    for _ in 0..n_samples {
        let lam = sampler.increment(t2 - t1, rng)?;
        let n = poisson_sample(lam, rng)?;
        rhs.push(jumps.sample_sum(n, rng));
    }

    lhs.sort_unstable_by(f64::total_cmp);
    rhs.sort_unstable_by(f64::total_cmp);
    let d = ks_two_sample(&lhs, &rhs);
    Ok(KsReport::new(
        d,
        two_sample_effective_n(n_samples, n_samples),
        format!(
            "Q({t2})-Q({t1}) via 64-cell path vs one-shot Q({})",
            t2 - t1
        ),
    ))
}
