//! Modified Bessel function of the third kind K_ν(z).
//!
//! K_ν(z) = ½ ∫_0^∞ y^{ν-1} exp{-(z/2)(y + 1/y)} dy. Substituting y = e^u
//! symmetrizes the integrand into ½ ∫_ℝ exp{νu - z cosh u} du, whose peak is
//! extracted analytically and whose remainder is integrated by tanh-sinh
//! quadrature. For z > 100 the large-argument asymptotic expansion takes
//! over.

use super::quad::{tanh_sinh, QuadratureSpec};
use super::SpecialError;

const ASYMPTOTIC_Z: f64 = 100.0;
// exp(log K) overflows/underflows past these; callers get a signal instead
// of an infinity or a silent zero.
const LOG_OVERFLOW: f64 = 709.0;
const LOG_UNDERFLOW: f64 = -708.0;

/// ln K_ν(z); defined for any real order ν and z > 0.
pub fn log_bessel_k(nu: f64, z: f64) -> Result<f64, SpecialError> {
    if !(z > 0.0) || !z.is_finite() {
        return Err(SpecialError::Domain(format!(
            "bessel_k requires z > 0, got {z}"
        )));
    }
    if !nu.is_finite() {
        return Err(SpecialError::Domain(format!(
            "bessel_k requires finite order, got {nu}"
        )));
    }
    let nu = nu.abs(); // K_{-ν} = K_ν via y → 1/y in the integral
    if z > ASYMPTOTIC_Z {
        if let Some(v) = log_k_asymptotic(nu, z) {
            return Ok(v);
        }
    }
    log_k_quadrature(nu, z)
}

/// K_ν(z), signalling when the value leaves f64 range.
pub fn bessel_k(nu: f64, z: f64) -> Result<f64, SpecialError> {
    let log_k = log_bessel_k(nu, z)?;
    if log_k > LOG_OVERFLOW {
        return Err(SpecialError::Overflow(format!(
            "K_{nu}({z}) has ln K = {log_k:.1}"
        )));
    }
    if log_k < LOG_UNDERFLOW {
        return Err(SpecialError::Underflow(format!(
            "K_{nu}({z}) has ln K = {log_k:.1}"
        )));
    }
    Ok(log_k.exp())
}

/// Peak-extracted double-exponential quadrature of ½∫ exp(νu - z cosh u) du.
fn log_k_quadrature(nu: f64, z: f64) -> Result<f64, SpecialError> {
    let phi = |u: f64| nu * u - z * u.cosh();
    // Stationary point: ν = z sinh u*.
    let u_star = (nu / z).asinh();
    let m = nu * u_star - z.hypot(nu);

    // Walk outward until the integrand has dropped by e^{-46}, then bisect
    // the crossing to keep the window tight.
    let width = z.hypot(nu).sqrt().recip();
    let cutoff = m - 46.0;
    let bracket = |dir: f64| -> f64 {
        let mut step = width;
        let mut u = u_star;
        while phi(u + dir * step) > cutoff {
            u += dir * step;
            step *= 2.0;
            if step > 1e6 {
                break;
            }
        }
        let mut lo = u;
        let mut hi = u + dir * step;
        for _ in 0..40 {
            let mid = 0.5 * (lo + hi);
            if phi(mid) > cutoff {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        hi
    };
    let u_hi = bracket(1.0);
    let u_lo = bracket(-1.0);

    let spec = QuadratureSpec::new(1e-12, 1e-300, 4096);
    let integral = tanh_sinh(|u| (phi(u) - m).exp(), u_lo, u_hi, &spec)?;
    Ok(m + (0.5 * integral).ln())
}

/// Large-argument expansion K_ν(z) ~ √(π/2z) e^{-z} Σ_k a_k(ν)/z^k.
///
/// Returns None when the series fails to reach round-off before its terms
/// start growing (very large ν relative to z); the quadrature path then
/// handles it.
fn log_k_asymptotic(nu: f64, z: f64) -> Option<f64> {
    let four_nu2 = 4.0 * nu * nu;
    let mut term = 1.0_f64;
    let mut sum = 1.0_f64;
    let mut prev_abs = f64::INFINITY;
    for k in 1..=300 {
        let kf = k as f64;
        let odd = 2.0 * kf - 1.0;
        term *= (four_nu2 - odd * odd) / (8.0 * z * kf);
        let abs = term.abs();
        if abs > prev_abs && abs > 1e-16 * sum.abs() {
            return None; // diverging before convergence
        }
        prev_abs = abs;
        sum += term;
        if abs < 1e-17 * sum.abs() {
            let prefix = 0.5 * (std::f64::consts::FRAC_PI_2 / z).ln();
            return Some(prefix - z + sum.ln());
        }
    }
    None
}
