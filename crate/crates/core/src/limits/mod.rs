//! The verification harness: checkable predicates for the moment and tail
//! conditions of the limit theory, Monte Carlo verifiers for the
//! concentration and tightness bounds, and the convergence experiments that
//! drive compound Cox marginals toward their stable / normal / GH / GVG
//! limits.
//!
//! Every verdict embeds its margins (estimate, standard error, bound) so a
//! PASS or FAIL can be audited without rerunning.

mod calibration;
mod checks;
mod experiments;
mod reports;
mod support;

use serde::{Deserialize, Serialize};

use crate::dist::ParamError;
use crate::process::{JumpScheme, SubordinatorScheme};

pub use calibration::RADEMACHER_CAUCHY_LIMIT_SCALE;
pub use checks::{
    check_condition_18_26, check_condition_24, check_condition_6, check_lemma3_bound,
    check_lemma4_equivalence, check_tightness_bound, ConditionVariant,
};
pub use experiments::{
    clt_normal_experiment, cor1_rademacher_cauchy_experiment, cor3_gvg_experiment,
    run_convergence_experiment, run_corollary3_experiment, thm2_gh_experiment, TrendConfig,
};
pub use reports::{
    BoundCell, BoundReport, ConditionRow, ConditionReport, KnPoint, TightnessCell,
    TightnessReport, TrendMargins, TrendReport, Verdict,
};
pub use support::{mixing_reference_cdf, ReferenceCdf};

/// Parameters of the quadratic-increment tightness bound
/// P(both increments ≥ ε) ≤ ε^{-2ν} [K·(t₂-t₁)/2]^{2γ} with ν = βδ and
/// γ = δ₁ > 1/2.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct TightnessParams {
    pub k: f64,
    pub beta_delta: f64,
    pub gamma: f64,
}

impl TightnessParams {
    pub fn new(k: f64, beta_delta: f64, gamma: f64) -> Result<Self, ParamError> {
        if !(k >= 0.0) || !k.is_finite() {
            return Err(ParamError(format!("K must be finite and >= 0, got {k}")));
        }
        if !(gamma > 0.5) {
            return Err(ParamError(format!(
                "gamma must exceed 1/2 for tightness, got {gamma}"
            )));
        }
        if !(beta_delta >= 0.0) {
            return Err(ParamError(format!("beta·delta must be >= 0, got {beta_delta}")));
        }
        Ok(Self {
            k,
            beta_delta,
            gamma,
        })
    }

    /// The modulus F(t) = K·t/2 entering the bound.
    pub fn modulus(&self, t: f64) -> f64 {
        0.5 * self.k * t
    }

    pub fn bound(&self, eps: f64, spacing: f64) -> f64 {
        eps.powf(-2.0 * self.beta_delta) * self.modulus(spacing).powf(2.0 * self.gamma)
    }
}

/// One row family of the triangular array per normalization count k_n.
pub struct ConvergenceSchedule {
    pub kn_values: Vec<u64>,
    pub n_samples: usize,
    pub jumps: Box<dyn Fn(u64) -> JumpScheme + Send + Sync>,
    pub subordinator: Box<dyn Fn(u64) -> SubordinatorScheme + Send + Sync>,
}

impl ConvergenceSchedule {
    pub fn new(
        kn_values: Vec<u64>,
        n_samples: usize,
        jumps: impl Fn(u64) -> JumpScheme + Send + Sync + 'static,
        subordinator: impl Fn(u64) -> SubordinatorScheme + Send + Sync + 'static,
    ) -> Result<Self, ParamError> {
        if kn_values.is_empty() || kn_values.windows(2).any(|w| w[1] <= w[0]) {
            return Err(ParamError(
                "kn_values must be nonempty and strictly increasing".into(),
            ));
        }
        if n_samples == 0 {
            return Err(ParamError("n_samples must be positive".into()));
        }
        Ok(Self {
            kn_values,
            n_samples,
            jumps: Box::new(jumps),
            subordinator: Box::new(subordinator),
        })
    }

    pub fn default_kn() -> Vec<u64> {
        vec![16, 64, 256, 1024, 4096]
    }
}
