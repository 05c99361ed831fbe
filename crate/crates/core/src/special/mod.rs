//! Scalar numerical kernels on which every distribution in the toolkit is
//! built: Φ, ln Γ, the regularized incomplete gamma, K_ν, adaptive
//! quadrature and characteristic-function inversion.

mod bessel;
mod inversion;
mod quad;

use std::f64::consts::FRAC_1_SQRT_2;
use std::sync::Arc;

use num_complex::Complex64;
use thiserror::Error;

pub use bessel::{bessel_k, log_bessel_k};
pub use inversion::cdf_from_cf;
pub use quad::{integrate, integrate_panels, tanh_sinh, QuadratureSpec};

#[derive(Debug, Clone, Error)]
pub enum SpecialError {
    #[error("domain error: {0}")]
    Domain(String),
    #[error(
        "quadrature did not converge within {subdivisions} subdivisions \
         (best estimate {best:e}, error bound {error_bound:e})"
    )]
    NonConvergence {
        best: f64,
        error_bound: f64,
        subdivisions: usize,
    },
    #[error("overflow: {0}")]
    Overflow(String),
    #[error("underflow: {0}; use the log-scaled variant")]
    Underflow(String),
}

/// Standard normal distribution function Φ(x).
pub fn normal_cdf(x: f64) -> f64 {
    0.5 * libm::erfc(-x * FRAC_1_SQRT_2)
}

/// Standard normal density φ(x).
pub fn normal_density(x: f64) -> f64 {
    (-0.5 * x * x).exp() / (2.0 * std::f64::consts::PI).sqrt()
}

/// Natural logarithm of Euler's gamma function, x > 0.
pub fn log_gamma(x: f64) -> Result<f64, SpecialError> {
    if !(x > 0.0) {
        return Err(SpecialError::Domain(format!(
            "log_gamma requires x > 0, got {x}"
        )));
    }
    Ok(libm::lgamma(x))
}

/// Regularized lower incomplete gamma P(a, x) = γ(a, x)/Γ(a).
///
/// Series expansion for x < a + 1, Lentz continued fraction otherwise.
pub fn gamma_inc_lower_reg(a: f64, x: f64) -> Result<f64, SpecialError> {
    if !(a > 0.0) || x < 0.0 {
        return Err(SpecialError::Domain(format!(
            "gamma_inc_lower_reg requires a > 0 and x >= 0, got a={a}, x={x}"
        )));
    }
    if x == 0.0 {
        return Ok(0.0);
    }
    let ln_gamma_a = libm::lgamma(a);
    let log_prefix = a * x.ln() - x - ln_gamma_a;
    if x < a + 1.0 {
        // P(a,x) = x^a e^{-x} / Γ(a) · Σ_k x^k / (a(a+1)...(a+k))
        let mut term = 1.0 / a;
        let mut sum = term;
        let mut denom = a;
        for _ in 0..500 {
            denom += 1.0;
            term *= x / denom;
            sum += term;
            if term.abs() < sum.abs() * 1e-16 {
                return Ok((log_prefix.exp() * sum).clamp(0.0, 1.0));
            }
        }
        Err(SpecialError::NonConvergence {
            best: log_prefix.exp() * sum,
            error_bound: term.abs(),
            subdivisions: 500,
        })
    } else {
        // Q(a,x) via the continued fraction 1/(x+1-a- 1(1-a)/(x+3-a- ...)).
        let tiny = 1e-300;
        let mut b = x + 1.0 - a;
        let mut c = 1.0 / tiny;
        let mut d = 1.0 / b;
        let mut h = d;
        for i in 1..500 {
            let an = -(i as f64) * (i as f64 - a);
            b += 2.0;
            d = an * d + b;
            if d.abs() < tiny {
                d = tiny;
            }
            c = b + an / c;
            if c.abs() < tiny {
                c = tiny;
            }
            d = 1.0 / d;
            let delta = d * c;
            h *= delta;
            if (delta - 1.0).abs() < 1e-16 {
                let q = log_prefix.exp() * h;
                return Ok((1.0 - q).clamp(0.0, 1.0));
            }
        }
        Err(SpecialError::NonConvergence {
            best: 1.0 - log_prefix.exp() * h,
            error_bound: 1e-10,
            subdivisions: 500,
        })
    }
}

/// A characteristic function s ↦ E e^{isX}, evaluated pointwise.
///
/// Valid instances satisfy eval(0) = 1 and |eval(s)| ≤ 1.
#[derive(Clone)]
pub struct CharacteristicFn {
    eval: Arc<dyn Fn(f64) -> Complex64 + Send + Sync>,
}

impl CharacteristicFn {
    pub fn new(eval: impl Fn(f64) -> Complex64 + Send + Sync + 'static) -> Self {
        Self {
            eval: Arc::new(eval),
        }
    }

    pub fn eval(&self, s: f64) -> Complex64 {
        (self.eval)(s)
    }
}

impl std::fmt::Debug for CharacteristicFn {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("CharacteristicFn").finish_non_exhaustive()
    }
}
