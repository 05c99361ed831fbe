//! Monte Carlo verifiers for the moment bound E Λ^δ(t) ≤ (C_n t)^{δ₁}, the
//! concentration bound P(|Q(t)| ≥ ε) ≤ (ε^{-β} m^β)^δ (C_n t)^{δ₁}, the
//! mixed-Poisson equivalence, the quadratic-increment tightness bound, and
//! the analytic normalization conditions on the jump arrays.

use crate::dist::MixingLaw;
use crate::exec::Pool;
use crate::process::{poisson_sample, JumpScheme, ProcessError, SubordinatorScheme};
use crate::stats::{ks_statistic_sorted, ks_statistic_sorted_left};

use super::reports::{
    binomial_se, kn_point, BoundCell, BoundReport, ConditionReport, ConditionRow, TightnessCell,
    TightnessReport, TrendReport, Verdict,
};
use super::support::{mixing_reference_cdf, sample_cell};
use super::TightnessParams;

/// For each t, the Monte Carlo estimate of E Λ^δ(t) must sit below the
/// certificate bound (C_n t)^{δ₁} with a 3-standard-error margin.
pub fn check_condition_6(
    scheme: &SubordinatorScheme,
    t_grid: &[f64],
    n_samples: usize,
    pool: &Pool,
    seed: u64,
) -> Result<BoundReport, ProcessError> {
    let cert = scheme.certificate.ok_or_else(|| {
        ProcessError::Domain("scheme carries no (delta, delta1, C_n) certificate".into())
    })?;
    if !scheme.is_path_capable() && t_grid.iter().any(|&t| t != 1.0) {
        return Err(ProcessError::UnsupportedKind(
            "scaled-marginal schemes support only t = 1 queries".into(),
        ));
    }
    let sampler = scheme.sampler();
    let mut cells = Vec::with_capacity(t_grid.len());
    for (idx, &t) in t_grid.iter().enumerate() {
        if !(t > 0.0 && t <= 1.0) {
            return Err(ProcessError::Domain(format!(
                "condition grid times must lie in (0,1], got {t}"
            )));
        }
        let draws = sample_cell(pool, seed, idx, n_samples, |rng, n| {
            (0..n)
                .map(|_| {
                    let lam = if t == 1.0 {
                        sampler.marginal_at_one(rng)
                    } else {
                        sampler.increment(t, rng).expect("path-capable checked")
                    };
                    lam.powf(cert.delta)
                })
                .collect::<Vec<f64>>()
        });
        let mean = draws.iter().sum::<f64>() / draws.len() as f64;
        let var = draws.iter().map(|x| (x - mean).powi(2)).sum::<f64>()
            / (draws.len() as f64 - 1.0);
        let se = (var / draws.len() as f64).sqrt();
        let bound = cert.bound(t);
        cells.push(BoundCell {
            eps: None,
            t,
            estimate: mean,
            se,
            bound,
            pass: mean - 3.0 * se <= bound,
        });
    }
    Ok(BoundReport::from_cells(
        format!("E Λ^{}(t) <= ({}·t)^{} for {}", cert.delta, cert.c_n, cert.delta1, scheme.label()),
        n_samples,
        cells,
    ))
}

/// Concentration bound on an (ε, t) grid. The empirical exceedance
/// probability (minus 3 binomial SEs) must stay below
/// (ε^{-β} m^β)^δ (C_n t)^{δ₁} in every cell.
pub fn check_lemma3_bound(
    jumps: &JumpScheme,
    scheme: &SubordinatorScheme,
    eps_grid: &[f64],
    t_grid: &[f64],
    n_samples: usize,
    pool: &Pool,
    seed: u64,
) -> Result<BoundReport, ProcessError> {
    let cert = scheme.certificate.ok_or_else(|| {
        ProcessError::Domain("scheme carries no (delta, delta1, C_n) certificate".into())
    })?;
    let m = jumps.moments();
    let sampler = scheme.sampler();

    let mut cells = Vec::new();
    for (t_idx, &t) in t_grid.iter().enumerate() {
        let qs = sample_cell(pool, seed, t_idx, n_samples, |rng, n| {
            (0..n)
                .map(|_| {
                    let lam = sampler.increment(t, rng).expect("path-capable");
                    let count = poisson_sample(lam, rng).expect("finite intensity");
                    jumps.sample_sum(count, rng).abs()
                })
                .collect::<Vec<f64>>()
        });
        for &eps in eps_grid {
            let hits = qs.iter().filter(|&&q| q >= eps).count();
            let p_hat = hits as f64 / qs.len() as f64;
            let se = binomial_se(p_hat, qs.len());
            let bound = (eps.powf(-m.beta) * m.m_beta).powf(cert.delta) * cert.bound(t);
            cells.push(BoundCell {
                eps: Some(eps),
                t,
                estimate: p_hat,
                se,
                bound,
                pass: p_hat - 3.0 * se <= bound,
            });
        }
    }
    Ok(BoundReport::from_cells(
        format!(
            "P(|Q(t)| >= eps) <= (eps^-{}·{})^{}·({}·t)^{}",
            m.beta, m.m_beta, cert.delta, cert.c_n, cert.delta1
        ),
        n_samples,
        cells,
    ))
}

/// Mixed-Poisson equivalence: with Λ = k_n·U and N ~ Poisson(Λ), the law of
/// N/k_n converges to the law of U. Reports the KS trend across k_n.
///
/// The sup-distance comparison is meaningful for atomless mixing laws; at an
/// atom of U the Poisson blur keeps the sup near the atom's half-mass no
/// matter how large k_n gets (convergence there is weak, not uniform), so
/// degenerate mixing should be checked by concentration instead.
pub fn check_lemma4_equivalence(
    mixing: &MixingLaw,
    kn_values: &[u64],
    n_samples: usize,
    pool: &Pool,
    seed: u64,
) -> Result<TrendReport, ProcessError> {
    let reference = mixing_reference_cdf(mixing);
    let mixing_sampler = mixing.sampler();
    let mut points = Vec::with_capacity(kn_values.len());
    for (idx, &kn) in kn_values.iter().enumerate() {
        let mut ratios = sample_cell(pool, seed, idx, n_samples, |rng, n| {
            (0..n)
                .map(|_| {
                    let lam = kn as f64 * mixing_sampler.sample(rng);
                    let count = poisson_sample(lam, rng).expect("finite intensity");
                    count as f64 / kn as f64
                })
                .collect::<Vec<f64>>()
        });
        ratios.sort_unstable_by(f64::total_cmp);
        let ks = ks_statistic_sorted_left(&ratios, &|x| (reference.at)(x), &|x| (reference.left)(x));
        points.push(kn_point(kn, ks, n_samples));
    }
    Ok(TrendReport::evaluate(
        format!("N/k_n vs {}", mixing.label()),
        points,
        0.02,
    ))
}

/// Quadratic-increment tightness bound on (t₁, t, t₂) triples, plus the
/// independence factorization of the joint exceedance probability.
#[allow(clippy::too_many_arguments)]
pub fn check_tightness_bound(
    jumps: &JumpScheme,
    scheme: &SubordinatorScheme,
    tp: &TightnessParams,
    triples: &[(f64, f64, f64)],
    eps: f64,
    n_samples: usize,
    pool: &Pool,
    seed: u64,
) -> Result<TightnessReport, ProcessError> {
    if !scheme.is_path_capable() {
        return Err(ProcessError::UnsupportedKind(
            "tightness check needs a path-capable scheme".into(),
        ));
    }
    let sampler = scheme.sampler();
    let mut cells = Vec::with_capacity(triples.len());
    for (idx, &(t1, t, t2)) in triples.iter().enumerate() {
        if !(0.0 <= t1 && t1 <= t && t <= t2 && t2 <= 1.0) {
            return Err(ProcessError::Domain(format!(
                "triples need 0 <= t1 <= t <= t2 <= 1, got ({t1}, {t}, {t2})"
            )));
        }
        // Simulate the two adjacent increments jointly from one clock.
        let pairs = sample_cell(pool, seed, idx, n_samples, |rng, n| {
            (0..n)
                .map(|_| {
                    let inc = |dt: f64, rng: &mut rand_chacha::ChaCha8Rng| -> f64 {
                        let lam = sampler.increment(dt, rng).expect("path-capable");
                        let count = poisson_sample(lam, rng).expect("finite intensity");
                        jumps.sample_sum(count, rng)
                    };
                    let a = inc(t - t1, rng).abs() >= eps;
                    let b = inc(t2 - t, rng).abs() >= eps;
                    (a, b)
                })
                .collect::<Vec<(bool, bool)>>()
        });
        let n = pairs.len();
        let joint = pairs.iter().filter(|&&(a, b)| a && b).count() as f64 / n as f64;
        let pa = pairs.iter().filter(|&&(a, _)| a).count() as f64 / n as f64;
        let pb = pairs.iter().filter(|&&(_, b)| b).count() as f64 / n as f64;
        let joint_se = binomial_se(joint, n);
        let product = pa * pb;
        // Delta-method SE for the product of the two marginal estimates.
        let product_se =
            ((pb * binomial_se(pa, n)).powi(2) + (pa * binomial_se(pb, n)).powi(2)).sqrt();
        let bound = tp.bound(eps, t2 - t1);
        cells.push(TightnessCell {
            t1,
            t,
            t2,
            eps,
            joint,
            joint_se,
            product,
            product_se,
            bound,
            bound_pass: joint - 3.0 * joint_se <= bound,
            factorization_pass: (joint - product).abs() <= 3.0 * (joint_se + product_se) + 1e-12,
        });
    }
    Ok(TightnessReport::from_cells(
        format!(
            "P(both increments >= {eps}) <= {eps}^-2·{}·[{}·(t2-t1)/2]^2·{} for {}",
            tp.beta_delta,
            tp.k,
            tp.gamma,
            scheme.label()
        ),
        n_samples,
        cells,
    ))
}

/// The three normalization sequences of the finite-variance regime:
/// k_n·a_n → a, k_n·σ²_n → σ², and the Lindeberg tail term → 0. Analytic
/// throughout; relative tolerance 1e-6 at the final k_n.
pub fn check_condition_24(
    jumps_per_kn: &dyn Fn(u64) -> JumpScheme,
    kn_values: &[u64],
    eps: f64,
    a_target: f64,
    sigma2_target: f64,
) -> ConditionReport {
    let mut rows = Vec::with_capacity(kn_values.len());
    for &kn in kn_values {
        let scheme = jumps_per_kn(kn);
        let m = scheme.moments();
        let kf = kn as f64;
        rows.push(ConditionRow {
            kn,
            values: vec![kf * m.mean, kf * m.variance, kf * scheme.lindeberg_term(eps)],
        });
    }
    let last = rows.last().expect("kn_values nonempty");
    let (ka, ks2, lind) = (last.values[0], last.values[1], last.values[2]);
    let ok = ka.is_finite()
        && ks2.is_finite()
        && lind.is_finite()
        && (ka - a_target).abs() <= 1e-6 * a_target.abs().max(1.0)
        && (ks2 - sigma2_target).abs() <= 1e-6 * sigma2_target.abs().max(1.0)
        && lind <= 1e-9;
    ConditionReport {
        description: format!(
            "k_n·a_n → {a_target}, k_n·σ²_n → {sigma2_target}, Lindeberg(ε={eps}) → 0"
        ),
        columns: vec![
            "kn_a_n".into(),
            "kn_sigma2_n".into(),
            "kn_lindeberg".into(),
        ],
        rows,
        constant: None,
        verdict: Verdict::from_bool(ok),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConditionVariant {
    /// K = limsup C_n^{δ₁/δ}·m_n^β.
    FractionalMoment,
    /// K = limsup C_n^{δ₁/δ}·(σ_n + |a_n|), the finite-variance variant.
    SigmaPlusMean,
}

/// Is the declared-certificate sequence C_n^{δ₁/δ}·(moment term) bounded?
/// PASS iff every value is finite and the last does not set a new running
/// supremum; the supremum is reported as the constant K̂.
pub fn check_condition_18_26(
    family: &dyn Fn(u64) -> (JumpScheme, SubordinatorScheme),
    kn_values: &[u64],
    variant: ConditionVariant,
) -> Result<ConditionReport, ProcessError> {
    let mut rows = Vec::with_capacity(kn_values.len());
    let mut values = Vec::with_capacity(kn_values.len());
    for &kn in kn_values {
        let (jumps, scheme) = family(kn);
        let cert = scheme.certificate.ok_or_else(|| {
            ProcessError::Domain("scheme carries no (delta, delta1, C_n) certificate".into())
        })?;
        let m = jumps.moments();
        let moment_term = match variant {
            ConditionVariant::FractionalMoment => m.m_beta,
            ConditionVariant::SigmaPlusMean => m.variance.sqrt() + m.mean.abs(),
        };
        let v = cert.c_n.powf(cert.delta1 / cert.delta) * moment_term;
        values.push(v);
        rows.push(ConditionRow {
            kn,
            values: vec![v],
        });
    }
    let k_hat = values.iter().cloned().fold(0.0_f64, f64::max);
    let prior_max = values[..values.len().saturating_sub(1)]
        .iter()
        .cloned()
        .fold(0.0_f64, f64::max);
    let last = *values.last().unwrap();
    let stabilized = values.len() == 1 || last <= prior_max * (1.0 + 1e-9);
    let ok = values.iter().all(|v| v.is_finite()) && stabilized;
    Ok(ConditionReport {
        description: match variant {
            ConditionVariant::FractionalMoment => {
                "running sup of C_n^{δ₁/δ}·m_n^β stabilizes".to_string()
            }
            ConditionVariant::SigmaPlusMean => {
                "running sup of C_n^{δ₁/δ}·(σ_n+|a_n|) stabilizes".to_string()
            }
        },
        columns: vec!["k_sequence".into()],
        rows,
        constant: Some(k_hat),
        verdict: Verdict::from_bool(ok),
    })
}

/// The KS trend of Q_n(1) against a limit CDF across the k_n schedule.
pub(super) fn convergence_trend(
    schedule: &super::ConvergenceSchedule,
    limit_cdf: &(dyn Fn(f64) -> f64 + Sync),
    reference: String,
    tolerance: f64,
    pool: &Pool,
    seed: u64,
) -> Result<TrendReport, ProcessError> {
    let mut points = Vec::with_capacity(schedule.kn_values.len());
    for (idx, &kn) in schedule.kn_values.iter().enumerate() {
        let jumps = (schedule.jumps)(kn);
        let scheme = (schedule.subordinator)(kn);
        let sampler = scheme.sampler();
        let mut qs = sample_cell(pool, seed, idx, schedule.n_samples, |rng, n| {
            (0..n)
                .map(|_| {
                    let lam = sampler.marginal_at_one(rng);
                    let count = poisson_sample(lam, rng).expect("finite intensity");
                    jumps.sample_sum(count, rng)
                })
                .collect::<Vec<f64>>()
        });
        qs.sort_unstable_by(f64::total_cmp);
        let ks = ks_statistic_sorted(&qs, limit_cdf);
        points.push(kn_point(kn, ks, schedule.n_samples));
    }
    Ok(TrendReport::evaluate(reference, points, tolerance))
}
