//! Jump schemes: the law of one elementary jump X_{n,1} together with the
//! normalization count k_n and the analytic moments the verification
//! harness reads (mean, variance, the fractional absolute moment
//! m^β = E|X|^β, and Lindeberg tail second moments).

use rand::Rng;
use rand_distr::{Binomial, Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::dist::ParamError;
use crate::special::normal_cdf;

/// Declared analytic moments of one jump; `variance` and `m_beta` may be
/// infinite for heavy-tailed schemes (used as negative controls).
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct JumpMoments {
    pub mean: f64,
    pub variance: f64,
    /// The exponent β ∈ (0, 1] of the fractional moment below.
    pub beta: f64,
    /// m^β = E|X|^β.
    pub m_beta: f64,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub enum JumpKind {
    /// P(X = hi) = p_hi, P(X = lo) = 1 - p_hi.
    TwoPoint { lo: f64, hi: f64, p_hi: f64 },
    Normal { mean: f64, sd: f64 },
    /// Symmetric Pareto: |X| = scale·U^{-1/exponent}, random sign. With
    /// exponent ∈ (1, 2) the mean is finite but the variance is not.
    ParetoSymmetric { exponent: f64, scale: f64 },
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct JumpScheme {
    kind: JumpKind,
    k_n: u64,
    moments: JumpMoments,
}

impl JumpScheme {
    pub fn two_point(lo: f64, hi: f64, p_hi: f64, k_n: u64, beta: f64) -> Result<Self, ParamError> {
        if !(0.0..=1.0).contains(&p_hi) || !lo.is_finite() || !hi.is_finite() {
            return Err(ParamError(format!(
                "two-point jump needs finite lo/hi and p_hi in [0,1], got lo={lo}, hi={hi}, p_hi={p_hi}"
            )));
        }
        Self::validate_beta(beta)?;
        let p = p_hi;
        let mean = lo * (1.0 - p) + hi * p;
        let variance = (lo - mean).powi(2) * (1.0 - p) + (hi - mean).powi(2) * p;
        let m_beta = lo.abs().powf(beta) * (1.0 - p) + hi.abs().powf(beta) * p;
        Self::checked(
            JumpKind::TwoPoint { lo, hi, p_hi },
            k_n,
            JumpMoments {
                mean,
                variance,
                beta,
                m_beta,
            },
        )
    }

    /// ±k_n^{-1/2} with equal probability: the jump scheme of the
    /// random-sum CLT and stable-limit experiments.
    pub fn rademacher_scaled(k_n: u64) -> Self {
        let s = (k_n as f64).sqrt().recip();
        Self::two_point(-s, s, 0.5, k_n, 1.0).expect("valid by construction")
    }

    /// Unit Rademacher jumps ±1.
    pub fn rademacher_unit(k_n: u64) -> Self {
        Self::two_point(-1.0, 1.0, 0.5, k_n, 1.0).expect("valid by construction")
    }

    /// a/k_n ± k_n^{-1/2}: two-point jumps with k_n·mean → a and
    /// k_n·variance → 1.
    pub fn shifted_rademacher(a: f64, k_n: u64) -> Self {
        let s = (k_n as f64).sqrt().recip();
        let c = a / k_n as f64;
        Self::two_point(c - s, c + s, 0.5, k_n, 1.0).expect("valid by construction")
    }

    pub fn normal(mean: f64, sd: f64, k_n: u64) -> Result<Self, ParamError> {
        if !(sd > 0.0) || !mean.is_finite() || !sd.is_finite() {
            return Err(ParamError(format!(
                "normal jump needs finite mean and sd > 0, got mean={mean}, sd={sd}"
            )));
        }
        // Folded-normal first absolute moment (β fixed at 1 for this kind).
        let r = mean / sd;
        let m1 = sd * (2.0 / std::f64::consts::PI).sqrt() * (-0.5 * r * r).exp()
            + mean * (1.0 - 2.0 * normal_cdf(-r));
        Self::checked(
            JumpKind::Normal { mean, sd },
            k_n,
            JumpMoments {
                mean,
                variance: sd * sd,
                beta: 1.0,
                m_beta: m1,
            },
        )
    }

    /// Heavy-tailed negative control: finite E|X|, infinite variance.
    pub fn pareto_symmetric(exponent: f64, scale: f64, k_n: u64) -> Result<Self, ParamError> {
        if !(exponent > 1.0 && exponent < 2.0) || !(scale > 0.0) {
            return Err(ParamError(format!(
                "symmetric Pareto control needs exponent in (1,2) and scale > 0, got {exponent}, {scale}"
            )));
        }
        let m1 = exponent * scale / (exponent - 1.0);
        Self::checked(
            JumpKind::ParetoSymmetric { exponent, scale },
            k_n,
            JumpMoments {
                mean: 0.0,
                variance: f64::INFINITY,
                beta: 1.0,
                m_beta: m1,
            },
        )
    }

    fn validate_beta(beta: f64) -> Result<(), ParamError> {
        if !(beta > 0.0 && beta <= 1.0) {
            return Err(ParamError(format!("beta must lie in (0,1], got {beta}")));
        }
        Ok(())
    }

    fn checked(kind: JumpKind, k_n: u64, moments: JumpMoments) -> Result<Self, ParamError> {
        if k_n == 0 {
            return Err(ParamError("k_n must be >= 1".into()));
        }
        if !(moments.m_beta > 0.0) || moments.m_beta.is_nan() || moments.m_beta.is_infinite() {
            return Err(ParamError(format!(
                "m^beta must lie in (0, ∞), got {}",
                moments.m_beta
            )));
        }
        let scheme = Self {
            kind,
            k_n,
            moments,
        };
        #[cfg(debug_assertions)]
        scheme.debug_moment_check();
        Ok(scheme)
    }

    /// Debug-mode Monte Carlo audit that the declared moments describe the
    /// sampler (fixed internal stream; 6-SE gate).
    #[cfg(debug_assertions)]
    fn debug_moment_check(&self) {
        if !self.moments.variance.is_finite() {
            return;
        }
        let mut rng = crate::rng::stream(0xC0FFEE, 0);
        let n = 16_384;
        let mut sum = 0.0;
        for _ in 0..n {
            sum += self.sample(&mut rng);
        }
        let mc_mean = sum / n as f64;
        let se = (self.moments.variance / n as f64).sqrt();
        debug_assert!(
            (mc_mean - self.moments.mean).abs() <= 6.0 * se + 1e-12,
            "declared mean {} disagrees with sampler ({mc_mean} ± {se})",
            self.moments.mean
        );
    }

    pub fn kind(&self) -> &JumpKind {
        &self.kind
    }

    pub fn k_n(&self) -> u64 {
        self.k_n
    }

    pub fn moments(&self) -> &JumpMoments {
        &self.moments
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        match self.kind {
            JumpKind::TwoPoint { lo, hi, p_hi } => {
                if rng.random::<f64>() < p_hi {
                    hi
                } else {
                    lo
                }
            }
            JumpKind::Normal { mean, sd } => {
                let z: f64 = StandardNormal.sample(rng);
                mean + sd * z
            }
            JumpKind::ParetoSymmetric { exponent, scale } => {
                let u: f64 = rng.random::<f64>();
                let mag = scale * (1.0 - u).powf(-1.0 / exponent);
                if rng.random::<bool>() {
                    mag
                } else {
                    -mag
                }
            }
        }
    }

    /// Σ_{i=1}^{n} X_i in O(1) draws for two-point (binomial count) and
    /// normal (scaled normal) kinds; heavy-tailed kinds loop.
    pub fn sample_sum<R: Rng + ?Sized>(&self, n: u64, rng: &mut R) -> f64 {
        if n == 0 {
            return 0.0;
        }
        match self.kind {
            JumpKind::TwoPoint { lo, hi, p_hi } => {
                let k = Binomial::new(n, p_hi)
                    .expect("p_hi validated")
                    .sample(rng);
                hi * k as f64 + lo * (n - k) as f64
            }
            JumpKind::Normal { mean, sd } => {
                let z: f64 = StandardNormal.sample(rng);
                mean * n as f64 + sd * (n as f64).sqrt() * z
            }
            JumpKind::ParetoSymmetric { .. } => {
                (0..n).map(|_| self.sample(rng)).sum()
            }
        }
    }

    /// Lindeberg tail second moment of one jump, E[(X-a)² ; |X-a| ≥ ε],
    /// evaluated analytically per kind.
    pub fn lindeberg_term(&self, eps: f64) -> f64 {
        assert!(eps > 0.0);
        let a = self.moments.mean;
        match self.kind {
            JumpKind::TwoPoint { lo, hi, p_hi } => {
                let mut acc = 0.0;
                for (x, p) in [(lo, 1.0 - p_hi), (hi, p_hi)] {
                    let d = x - a;
                    if d.abs() >= eps {
                        acc += d * d * p;
                    }
                }
                acc
            }
            JumpKind::Normal { sd, .. } => {
                // E[Z²; |Z| ≥ c] = 2(cφ(c) + Φ(-c)) for standard Z.
                let c = eps / sd;
                let phi_c = crate::special::normal_density(c);
                sd * sd * 2.0 * (c * phi_c + normal_cdf(-c))
            }
            JumpKind::ParetoSymmetric { .. } => f64::INFINITY,
        }
    }
}
