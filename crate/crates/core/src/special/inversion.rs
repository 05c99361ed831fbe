//! Gil–Pelaez inversion: F(x) = ½ - (1/π) ∫_0^∞ Im[e^{-isx} φ(s)]/s ds.
//!
//! The integrand extends continuously to s = 0 when φ is differentiable
//! there, but heavy-tailed laws (stable with α < 1) contribute an integrable
//! s^{α-1} spike instead. The integral is therefore taken on [s₀, S] with
//! s₀ = 1e-10 and the omitted piece restored analytically from a measured
//! power-law fit of Im φ near zero. S is chosen so the envelope |φ(s)|/s has
//! fallen below 1e-12, which a law with a density reaches in finite S
//! whenever its CF decays superpolynomially (true for every family in this
//! crate).

use super::quad::{integrate_panels, QuadratureSpec};
use super::{CharacteristicFn, SpecialError};

const S0: f64 = 1e-10;
const TAIL_ENVELOPE: f64 = 1e-12;
const S_MAX: f64 = 1e7;
const MAX_PANELS: usize = 200_000;

/// Distribution function at `x` recovered from a characteristic function.
pub fn cdf_from_cf(
    cf: &CharacteristicFn,
    x: f64,
    spec: &QuadratureSpec,
) -> Result<f64, SpecialError> {
    assert!(x.is_finite(), "cdf_from_cf requires finite x");

    let s_upper = find_truncation(cf)?;
    let integrand = |s: f64| {
        let c = cf.eval(s);
        let (sin_sx, cos_sx) = (s * x).sin_cos();
        (c.im * cos_sx - c.re * sin_sx) / s
    };

    // Oscillation-aware panel seeding: geometric toward s₀ to absorb the
    // near-zero behaviour, then at most one half-period of e^{-isx} per panel.
    let mut points = Vec::new();
    let mut s = S0;
    points.push(s);
    while s < 1e-2_f64.min(s_upper) {
        s *= 100.0;
        points.push(s.min(s_upper));
    }
    let start = *points.last().unwrap();
    if start < s_upper {
        let half_period = std::f64::consts::PI / x.abs().max(1.0);
        let n = (((s_upper - start) / half_period).ceil() as usize).clamp(1, MAX_PANELS);
        for i in 1..=n {
            points.push(start + (s_upper - start) * (i as f64) / (n as f64));
        }
    }

    let integral = integrate_panels(integrand, &points, spec)?;
    let omitted = omitted_head(cf, x);

    Ok((0.5 - (integral + omitted) / std::f64::consts::PI).clamp(0.0, 1.0))
}

/// ∫_0^{s₀} Im[e^{-isx} φ(s)]/s ds ≈ ∫_0^{s₀} (Im φ(s)/s - x) ds, with
/// Im φ(s) ≈ d·s^a fitted from two evaluations. Exact to O(s₀^{3a}).
fn omitted_head(cf: &CharacteristicFn, x: f64) -> f64 {
    let i1 = cf.eval(S0).im;
    let i2 = cf.eval(S0 / 2.0).im;
    let singular = if i1.abs() < 1e-300 {
        0.0
    } else {
        let ratio = i1 / i2;
        if ratio.is_finite() && ratio > 1.0001 && ratio < 2.3 {
            let a = ratio.log2().clamp(0.05, 1.5);
            i1 / a
        } else {
            // Flat or noisy Im φ near 0: treat as linear (a = 1).
            i1
        }
    };
    singular - x * S0
}

/// Smallest doubling S ≥ 16 with max_{s ∈ [S, 2S]} |φ(s)|/s < 1e-12,
/// probed at four points per octave.
fn find_truncation(cf: &CharacteristicFn) -> Result<f64, SpecialError> {
    let mut s = 16.0_f64;
    loop {
        let envelope = (0..4)
            .map(|j| {
                let p = s * (1.0 + 0.25 * j as f64);
                cf.eval(p).norm() / p
            })
            .fold(0.0_f64, f64::max);
        if envelope < TAIL_ENVELOPE {
            return Ok(2.0 * s);
        }
        s *= 2.0;
        if s > S_MAX {
            return Err(SpecialError::NonConvergence {
                best: f64::NAN,
                error_bound: envelope,
                subdivisions: 0,
            });
        }
    }
}
