//! Subordinator schemes: the driving nondecreasing Lévy clock Λ_n, its
//! increment laws, and the (δ, δ₁, C_n) moment-bound certificate asserting
//! E Λ^δ(t) ≤ (C_n t)^{δ₁} on (0, 1].

use rand::Rng;
use rand_distr::{Distribution, Gamma, StandardNormal};
use serde::{Deserialize, Serialize};

use super::ProcessError;
use crate::dist::{MixingLaw, MixingSampler, ParamError, StableParams, StableSampler};

/// Certificate for the moment bound E Λ^δ(t) ≤ (C_n t)^{δ₁}.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct MomentCertificate {
    pub delta: f64,
    pub delta1: f64,
    pub c_n: f64,
}

impl MomentCertificate {
    pub fn new(delta: f64, delta1: f64, c_n: f64) -> Result<Self, ParamError> {
        if !(delta > 0.0 && delta <= 1.0) {
            return Err(ParamError(format!("delta must lie in (0,1], got {delta}")));
        }
        if !(delta1 >= 0.5) {
            return Err(ParamError(format!("delta1 must be >= 1/2, got {delta1}")));
        }
        if !(c_n > 0.0) || !c_n.is_finite() {
            return Err(ParamError(format!("C_n must be positive and finite, got {c_n}")));
        }
        Ok(Self { delta, delta1, c_n })
    }

    pub fn bound(&self, t: f64) -> f64 {
        (self.c_n * t).powf(self.delta1)
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub enum SubordinatorKind {
    /// One-sided stable clock: increments (t-s)^{1/α'}·Z_{α',1}, α' ∈ (0,1).
    StableSub { alpha: f64 },
    /// Gamma clock: increments Gamma(shape·(t-s), rate).
    GammaSub { shape_per_time: f64, rate: f64 },
    /// Inverse Gaussian clock: increments IG(mean·Δ, shape·Δ²).
    IgSub { mean_per_time: f64, shape_per_time: f64 },
    /// Λ(t) = c·t.
    Deterministic { slope: f64 },
    /// Marginal-only description Λ(1) = k_n·U; supports t = 1 queries only.
    ScaledMarginal { k_n: f64, mixing: MixingLaw },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SubordinatorScheme {
    pub kind: SubordinatorKind,
    pub certificate: Option<MomentCertificate>,
}

impl SubordinatorScheme {
    pub fn stable(alpha: f64) -> Result<Self, ParamError> {
        StableParams::one_sided(alpha)?;
        Ok(Self {
            kind: SubordinatorKind::StableSub { alpha },
            certificate: None,
        })
    }

    /// Stable clock with the self-similarity certificate: for any
    /// δ ∈ [α/2, α), E Λ^δ(t) = t^{δ/α} E Z^δ gives δ₁ = δ/α and
    /// C_n = (E Z_{α,1}^δ)^{1/α} via the Mellin transform
    /// E Z_{α,1}^δ = Γ(1-δ/α)/Γ(1-δ).
    pub fn stable_with_certificate(alpha: f64, delta: f64) -> Result<Self, ParamError> {
        if !(delta >= alpha / 2.0 && delta < alpha) {
            return Err(ParamError(format!(
                "stable certificate needs delta in [alpha/2, alpha), got delta={delta}, alpha={alpha}"
            )));
        }
        let mut s = Self::stable(alpha)?;
        let moment = one_sided_stable_moment(alpha, delta);
        s.certificate = Some(MomentCertificate::new(
            delta,
            delta / alpha,
            moment.powf(1.0 / alpha),
        )?);
        Ok(s)
    }

    pub fn gamma(shape_per_time: f64, rate: f64) -> Result<Self, ParamError> {
        if !(shape_per_time > 0.0 && rate > 0.0) {
            return Err(ParamError(format!(
                "gamma subordinator needs shape_per_time > 0 and rate > 0, got {shape_per_time}, {rate}"
            )));
        }
        // E Λ(t) = shape·t/rate, so δ = 1 certifies with δ₁ = 1.
        Ok(Self {
            kind: SubordinatorKind::GammaSub {
                shape_per_time,
                rate,
            },
            certificate: Some(MomentCertificate::new(1.0, 1.0, shape_per_time / rate)?),
        })
    }

    pub fn inverse_gaussian(mean_per_time: f64, shape_per_time: f64) -> Result<Self, ParamError> {
        if !(mean_per_time > 0.0 && shape_per_time > 0.0) {
            return Err(ParamError(format!(
                "IG subordinator needs positive per-time mean and shape, got {mean_per_time}, {shape_per_time}"
            )));
        }
        Ok(Self {
            kind: SubordinatorKind::IgSub {
                mean_per_time,
                shape_per_time,
            },
            certificate: Some(MomentCertificate::new(1.0, 1.0, mean_per_time)?),
        })
    }

    pub fn deterministic(slope: f64) -> Result<Self, ParamError> {
        if !(slope > 0.0) || !slope.is_finite() {
            return Err(ParamError(format!(
                "deterministic clock needs slope > 0, got {slope}"
            )));
        }
        Ok(Self {
            kind: SubordinatorKind::Deterministic { slope },
            certificate: Some(MomentCertificate::new(1.0, 1.0, slope)?),
        })
    }

    /// Marginal-only scheme Λ(1) = k_n·U. Carries no certificate by design;
    /// the verification harness checks its limit conditions separately.
    pub fn scaled_marginal(k_n: f64, mixing: MixingLaw) -> Result<Self, ParamError> {
        if !(k_n > 0.0) || !k_n.is_finite() {
            return Err(ParamError(format!("k_n must be positive, got {k_n}")));
        }
        Ok(Self {
            kind: SubordinatorKind::ScaledMarginal { k_n, mixing },
            certificate: None,
        })
    }

    pub fn with_certificate(mut self, cert: MomentCertificate) -> Self {
        self.certificate = Some(cert);
        self
    }

    pub fn is_path_capable(&self) -> bool {
        !matches!(self.kind, SubordinatorKind::ScaledMarginal { .. })
    }

    pub fn label(&self) -> String {
        match &self.kind {
            SubordinatorKind::StableSub { alpha } => format!("stable subordinator(alpha={alpha})"),
            SubordinatorKind::GammaSub {
                shape_per_time,
                rate,
            } => format!("gamma subordinator(shape/t={shape_per_time}, rate={rate})"),
            SubordinatorKind::IgSub {
                mean_per_time,
                shape_per_time,
            } => format!("IG subordinator(mean/t={mean_per_time}, shape/t={shape_per_time})"),
            SubordinatorKind::Deterministic { slope } => format!("deterministic clock({slope}·t)"),
            SubordinatorKind::ScaledMarginal { k_n, mixing } => {
                format!("scaled marginal({k_n}·{})", mixing.label())
            }
        }
    }

    pub fn sampler(&self) -> SubordinatorSampler {
        let kind = match &self.kind {
            SubordinatorKind::StableSub { alpha } => SamplerKind::Stable {
                alpha: *alpha,
                inner: StableSampler::new(StableParams::one_sided(*alpha).unwrap())
                    .expect("one-sided is samplable"),
            },
            SubordinatorKind::GammaSub {
                shape_per_time,
                rate,
            } => SamplerKind::Gamma {
                shape_per_time: *shape_per_time,
                rate: *rate,
            },
            SubordinatorKind::IgSub {
                mean_per_time,
                shape_per_time,
            } => SamplerKind::Ig {
                mean_per_time: *mean_per_time,
                shape_per_time: *shape_per_time,
            },
            SubordinatorKind::Deterministic { slope } => SamplerKind::Deterministic { slope: *slope },
            SubordinatorKind::ScaledMarginal { k_n, mixing } => SamplerKind::ScaledMarginal {
                k_n: *k_n,
                mixing: mixing.sampler(),
            },
        };
        SubordinatorSampler { kind }
    }
}

/// E Z_{α,1}^ρ = Γ(1 - ρ/α)/Γ(1 - ρ) for ρ < α (Mellin transform of the
/// one-sided stable law).
pub fn one_sided_stable_moment(alpha: f64, rho: f64) -> f64 {
    assert!(alpha > 0.0 && alpha < 1.0 && rho < alpha);
    (libm::lgamma(1.0 - rho / alpha) - libm::lgamma(1.0 - rho)).exp()
}

#[derive(Debug, Clone)]
enum SamplerKind {
    Stable { alpha: f64, inner: StableSampler },
    Gamma { shape_per_time: f64, rate: f64 },
    Ig { mean_per_time: f64, shape_per_time: f64 },
    Deterministic { slope: f64 },
    ScaledMarginal { k_n: f64, mixing: MixingSampler },
}

/// Prepared increment sampler for a subordinator scheme.
#[derive(Debug, Clone)]
pub struct SubordinatorSampler {
    kind: SamplerKind,
}

impl SubordinatorSampler {
    /// One increment over an interval of length `dt` (path-capable kinds).
    pub fn increment<R: Rng + ?Sized>(&self, dt: f64, rng: &mut R) -> Result<f64, ProcessError> {
        assert!(dt >= 0.0);
        if dt == 0.0 {
            return Ok(0.0);
        }
        match &self.kind {
            SamplerKind::Stable { alpha, inner } => {
                Ok(dt.powf(1.0 / alpha) * inner.sample(rng))
            }
            SamplerKind::Gamma {
                shape_per_time,
                rate,
            } => {
                let g = Gamma::new(shape_per_time * dt, 1.0 / rate)
                    .map_err(|e| ProcessError::Domain(format!("gamma increment: {e}")))?;
                Ok(g.sample(rng))
            }
            SamplerKind::Ig {
                mean_per_time,
                shape_per_time,
            } => Ok(inverse_gaussian_sample(
                mean_per_time * dt,
                shape_per_time * dt * dt,
                rng,
            )),
            SamplerKind::Deterministic { slope } => Ok(slope * dt),
            SamplerKind::ScaledMarginal { .. } => Err(ProcessError::UnsupportedKind(
                "scaled-marginal schemes support only t = 1 queries, not path increments".into(),
            )),
        }
    }

    /// The marginal Λ(1); defined for every kind.
    pub fn marginal_at_one<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        match &self.kind {
            SamplerKind::ScaledMarginal { k_n, mixing } => k_n * mixing.sample(rng),
            _ => self.increment(1.0, rng).expect("path-capable"),
        }
    }
}

/// Two-root transform (Michael–Schucany–Haas) inverse Gaussian sampler.
fn inverse_gaussian_sample<R: Rng + ?Sized>(mean: f64, shape: f64, rng: &mut R) -> f64 {
    let z: f64 = StandardNormal.sample(rng);
    let y = z * z;
    let x = mean + mean * mean * y / (2.0 * shape)
        - mean / (2.0 * shape) * (4.0 * mean * shape * y + mean * mean * y * y).sqrt();
    let u: f64 = rng.random();
    if u <= mean / (mean + x) {
        x
    } else {
        mean * mean / x
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::stream;
    use crate::stats::ks_statistic_sorted;

    #[test]
    fn certificate_validation() {
        assert!(MomentCertificate::new(0.0, 1.0, 1.0).is_err());
        assert!(MomentCertificate::new(1.1, 1.0, 1.0).is_err());
        assert!(MomentCertificate::new(0.5, 0.4, 1.0).is_err());
        assert!(MomentCertificate::new(0.5, 0.5, 0.0).is_err());
        let c = MomentCertificate::new(0.25, 0.5, 4.0).unwrap();
        assert!((c.bound(0.25) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn paper_certificate_for_half_stable() {
        // δ = 1/4, α' = 1/2: δ₁ = 1/2; E Z^{1/4} = Γ(1/2)/Γ(3/4) = 1.4464353.
        let s = SubordinatorScheme::stable_with_certificate(0.5, 0.25).unwrap();
        let c = s.certificate.unwrap();
        assert!((c.delta1 - 0.5).abs() < 1e-15);
        let want = 1.446_409_084_632_077_f64; // Γ(1/2)/Γ(3/4)
        assert!((one_sided_stable_moment(0.5, 0.25) - want).abs() < 1e-10);
        assert!((c.c_n - want * want).abs() < 1e-9);
        assert!(SubordinatorScheme::stable_with_certificate(0.5, 0.2).is_err());
        assert!(SubordinatorScheme::stable_with_certificate(0.5, 0.5).is_err());
    }

    #[test]
    fn mellin_moment_against_monte_carlo() {
        let sampler = StableSampler::new(StableParams::one_sided(0.5).unwrap()).unwrap();
        let mut rng = stream(111, 0);
        let n = 200_000;
        let xs: Vec<f64> = (0..n).map(|_| sampler.sample(&mut rng).powf(0.25)).collect();
        let mean = xs.iter().sum::<f64>() / n as f64;
        let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n as f64 - 1.0);
        let se = (var / n as f64).sqrt();
        let want = one_sided_stable_moment(0.5, 0.25);
        assert!((mean - want).abs() < 3.0 * se, "MC {mean} ± {se} vs {want}");
    }

    #[test]
    fn ig_increment_matches_closed_form_cdf() {
        let s = SubordinatorScheme::inverse_gaussian(1.0, 1.0).unwrap();
        let sampler = s.sampler();
        let mut rng = stream(112, 0);
        let mut xs: Vec<f64> = (0..100_000)
            .map(|_| sampler.increment(1.0, &mut rng).unwrap())
            .collect();
        xs.sort_unstable_by(f64::total_cmp);
        let d = ks_statistic_sorted(&xs, |x| crate::dist::inverse_gaussian_cdf(1.0, 1.0, x));
        assert!(d <= 0.01, "KS = {d}");
    }

    #[test]
    fn scaled_marginal_rejects_path_queries() {
        let s = SubordinatorScheme::scaled_marginal(8.0, MixingLaw::degenerate(1.0).unwrap())
            .unwrap();
        let sampler = s.sampler();
        let mut rng = stream(113, 0);
        assert!(sampler.increment(0.5, &mut rng).is_err());
        assert_eq!(sampler.marginal_at_one(&mut rng), 8.0);
        assert!(!s.is_path_capable());
    }

    #[test]
    fn deterministic_clock_is_linear() {
        let s = SubordinatorScheme::deterministic(2.0).unwrap();
        let sampler = s.sampler();
        let mut rng = stream(114, 0);
        assert_eq!(sampler.increment(0.25, &mut rng).unwrap(), 0.5);
        assert_eq!(sampler.marginal_at_one(&mut rng), 2.0);
    }
}
