//! Shared experiment machinery: reference-CDF resolution for mixing laws
//! and sample generation across indexed RNG streams.

use std::sync::Arc;

use crate::dist::{gg_cdf_closure, inverse_gaussian_cdf, levy_unit_cdf, MixingLaw};
use crate::exec::Pool;
use crate::special::QuadratureSpec;
use crate::stats::TabulatedCdf;

/// A reference CDF with explicit left limits, so KS comparisons stay exact
/// for step references (degenerate or empirical mixing).
#[derive(Clone)]
pub struct ReferenceCdf {
    pub at: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
    pub left: Arc<dyn Fn(f64) -> f64 + Send + Sync>,
}

impl ReferenceCdf {
    fn continuous(f: Arc<dyn Fn(f64) -> f64 + Send + Sync>) -> Self {
        Self {
            at: Arc::clone(&f),
            left: f,
        }
    }
}

/// A cheap pointwise CDF for a mixing law: closed forms where they exist,
/// a tabulation of the quadrature CDF otherwise.
pub fn mixing_reference_cdf(law: &MixingLaw) -> ReferenceCdf {
    match law {
        MixingLaw::Gg(p) => ReferenceCdf::continuous(gg_cdf_closure(*p)),
        MixingLaw::Gig(p) if p.nu() == -0.5 && !p.is_inverse_gamma_limit() => {
            let (mean, shape) = ((p.mu() / p.lambda()).sqrt(), p.mu());
            ReferenceCdf::continuous(Arc::new(move |x| inverse_gaussian_cdf(mean, shape, x)))
        }
        MixingLaw::OneSidedStable(p) if p.alpha() == 0.5 => {
            ReferenceCdf::continuous(Arc::new(levy_unit_cdf))
        }
        MixingLaw::Degenerate(c) => {
            let c = *c;
            ReferenceCdf {
                at: Arc::new(move |x| if x >= c { 1.0 } else { 0.0 }),
                left: Arc::new(move |x| if x > c { 1.0 } else { 0.0 }),
            }
        }
        MixingLaw::Empirical(xs) => {
            let mut sorted = xs.as_ref().clone();
            sorted.sort_unstable_by(f64::total_cmp);
            let s2 = sorted.clone();
            ReferenceCdf {
                at: Arc::new(move |x| {
                    sorted.partition_point(|&v| v <= x) as f64 / sorted.len() as f64
                }),
                left: Arc::new(move |x| s2.partition_point(|&v| v < x) as f64 / s2.len() as f64),
            }
        }
        law => {
            let spec = QuadratureSpec::new(1e-9, 1e-11, 20_000);
            let l = law.clone();
            let range = density_range(&l);
            let table = TabulatedCdf::build(
                move |x| l.cdf(x, &spec).expect("mixing cdf quadrature converges"),
                range.0,
                range.1,
                1.0,
                1201,
            );
            ReferenceCdf::continuous(Arc::new(move |x| table.eval(x)))
        }
    }
}

/// Support window holding all but a negligible sliver of the mass: find a
/// bulk anchor on a log grid, then walk outward until the density falls
/// below 1e-9.
fn density_range(law: &MixingLaw) -> (f64, f64) {
    let density = |x: f64| law.density(x).unwrap_or(0.0);
    let anchor = (-20..=20)
        .map(|k| 2.0_f64.powi(k))
        .max_by(|a, b| density(*a).total_cmp(&density(*b)))
        .unwrap_or(1.0);
    let mut hi = anchor;
    while density(hi) > 1e-9 && hi < 1e9 {
        hi *= 2.0;
    }
    let mut lo = anchor;
    while density(lo) > 1e-9 && lo > 1e-12 {
        lo /= 2.0;
    }
    (lo / 2.0, hi * 2.0)
}

/// Fixed number of replication blocks per Monte Carlo cell; the stream for
/// cell `c`, block `b` is `stream(seed, c·BLOCKS + b)`, independent of the
/// worker count.
pub const BLOCKS: usize = 4;

/// Generate `n` samples for cell `cell_idx` across [`BLOCKS`] streams.
pub fn sample_cell<T: Send>(
    pool: &Pool,
    seed: u64,
    cell_idx: usize,
    n: usize,
    gen: impl Fn(&mut rand_chacha::ChaCha8Rng, usize) -> Vec<T> + Sync,
) -> Vec<T> {
    let shares: Vec<usize> = (0..BLOCKS)
        .map(|b| n / BLOCKS + usize::from(b < n % BLOCKS))
        .collect();
    let blocks = pool.run(BLOCKS, |b| {
        let mut rng = crate::rng::stream(seed, (cell_idx * BLOCKS + b) as u64);
        gen(&mut rng, shares[b])
    });
    blocks.into_iter().flatten().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dist::{GgParams, GigParams};

    #[test]
    fn closed_forms_are_used_where_available() {
        let exp_law = MixingLaw::Gg(GgParams::new(1.0, 1.0, 1.0).unwrap());
        let cdf = mixing_reference_cdf(&exp_law);
        assert!(((cdf.at)(1.0) - (1.0 - (-1.0_f64).exp())).abs() < 1e-12);

        let ig_law = MixingLaw::Gig(GigParams::new(-0.5, 1.0, 1.0).unwrap());
        let cdf = mixing_reference_cdf(&ig_law);
        assert!(((cdf.at)(1.0) - inverse_gaussian_cdf(1.0, 1.0, 1.0)).abs() < 1e-12);
    }

    #[test]
    fn step_references_expose_left_limits() {
        let law = MixingLaw::degenerate(1.0).unwrap();
        let cdf = mixing_reference_cdf(&law);
        assert_eq!((cdf.at)(1.0), 1.0);
        assert_eq!((cdf.left)(1.0), 0.0);
        let law = MixingLaw::empirical(vec![1.0, 2.0]).unwrap();
        let cdf = mixing_reference_cdf(&law);
        assert_eq!((cdf.at)(1.0), 0.5);
        assert_eq!((cdf.left)(1.0), 0.0);
    }

    #[test]
    fn tabulated_fallback_matches_quadrature() {
        let law = MixingLaw::Gig(GigParams::new(0.7, 0.9, 1.3).unwrap());
        let cdf = mixing_reference_cdf(&law);
        let spec = QuadratureSpec::new(1e-10, 1e-12, 20_000);
        for &x in &[0.2, 0.9, 2.5, 7.0] {
            let want = law.cdf(x, &spec).unwrap();
            assert!(((cdf.at)(x) - want).abs() < 1e-3, "x={x}: {} vs {want}", (cdf.at)(x));
        }
    }

    #[test]
    fn cell_sampling_is_worker_invariant() {
        let serial = sample_cell(&Pool::serial(), 9, 2, 1003, |rng, n| {
            (0..n).map(|_| rand::Rng::random::<f64>(rng)).collect()
        });
        let parallel = sample_cell(&Pool::new(4), 9, 2, 1003, |rng, n| {
            (0..n).map(|_| rand::Rng::random::<f64>(rng)).collect()
        });
        assert_eq!(serial, parallel);
        assert_eq!(serial.len(), 1003);
    }
}
