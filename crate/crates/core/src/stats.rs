//! Empirical-distribution utilities: Kolmogorov–Smirnov distances with tie
//! handling, DKW confidence bands, empirical characteristic functions, and
//! tabulated CDFs for reference laws that are expensive to evaluate per
//! point.

use serde::{Deserialize, Serialize};

/// Empirical-vs-reference comparison: sup-distance, sample size, the 99%
/// DKW band √(ln(2/0.01)/(2n)) and a description of the reference CDF.
///
/// For two-sample comparisons `n_samples` is the effective size
/// n₁n₂/(n₁+n₂), which makes the same band formula applicable.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct KsReport {
    pub statistic: f64,
    pub n_samples: usize,
    pub dkw_99: f64,
    pub reference: String,
}

impl KsReport {
    pub fn new(statistic: f64, n_samples: usize, reference: impl Into<String>) -> Self {
        Self {
            statistic,
            n_samples,
            dkw_99: dkw_99(n_samples),
            reference: reference.into(),
        }
    }
}

/// 99% DKW uniform deviation bound for an n-sample empirical CDF.
pub fn dkw_99(n: usize) -> f64 {
    ((2.0_f64 / 0.01).ln() / (2.0 * n as f64)).sqrt()
}

/// One-sample KS statistic against a continuous reference CDF. `xs` must be
/// sorted. Ties in the sample (discrete data) are handled by evaluating the
/// empirical CDF on both sides of each distinct value.
pub fn ks_statistic_sorted(xs: &[f64], cdf: impl Fn(f64) -> f64) -> f64 {
    ks_statistic_sorted_left(xs, &cdf, &cdf)
}

/// KS statistic against a reference that may itself have jumps: `cdf_left`
/// evaluates F(x-0). For continuous references pass the same closure twice
/// (see [`ks_statistic_sorted`]).
pub fn ks_statistic_sorted_left(
    xs: &[f64],
    cdf: &dyn Fn(f64) -> f64,
    cdf_left: &dyn Fn(f64) -> f64,
) -> f64 {
    assert!(!xs.is_empty());
    debug_assert!(xs.windows(2).all(|w| w[0] <= w[1]), "samples must be sorted");
    let n = xs.len() as f64;
    let mut d = 0.0_f64;
    let mut i = 0;
    while i < xs.len() {
        let x = xs[i];
        let mut j = i + 1;
        while j < xs.len() && xs[j] == x {
            j += 1;
        }
        let below = i as f64 / n;
        let above = j as f64 / n;
        d = d.max((cdf_left(x) - below).abs()).max((above - cdf(x)).abs());
        i = j;
    }
    d
}

/// Two-sample KS statistic. Both inputs must be sorted; ties across and
/// within samples are handled by advancing both walkers past equal values.
pub fn ks_two_sample(xs: &[f64], ys: &[f64]) -> f64 {
    assert!(!xs.is_empty() && !ys.is_empty());
    let (n, m) = (xs.len() as f64, ys.len() as f64);
    let (mut i, mut j) = (0usize, 0usize);
    let mut d = 0.0_f64;
    while i < xs.len() && j < ys.len() {
        let v = xs[i].min(ys[j]);
        while i < xs.len() && xs[i] <= v {
            i += 1;
        }
        while j < ys.len() && ys[j] <= v {
            j += 1;
        }
        d = d.max((i as f64 / n - j as f64 / m).abs());
    }
    d
}

/// Effective sample size for a two-sample KS comparison.
pub fn two_sample_effective_n(n1: usize, n2: usize) -> usize {
    ((n1 as f64 * n2 as f64) / (n1 + n2) as f64).round() as usize
}

/// Empirical characteristic function of a sample at frequency `s`.
pub fn empirical_cf(xs: &[f64], s: f64) -> num_complex::Complex64 {
    let mut acc = num_complex::Complex64::new(0.0, 0.0);
    for &x in xs {
        let (im, re) = (s * x).sin_cos();
        acc += num_complex::Complex64::new(re, im);
    }
    acc / xs.len() as f64
}

/// Piecewise-linear tabulation of a monotone CDF on an arctan-warped grid.
///
/// Node placement is uniform in w = atan(x/scale) with geometric refinement
/// toward both interval ends, so heavy-tailed references stay resolved where
/// their mass sits. Queries outside [lo, hi] clamp to the boundary values;
/// callers pick lo/hi so the clipped tail mass is negligible against the KS
/// tolerance in play (≲ 1e-3 everywhere in this crate).
#[derive(Debug, Clone)]
pub struct TabulatedCdf {
    xs: Vec<f64>,
    fs: Vec<f64>,
}

impl TabulatedCdf {
    pub fn build(
        cdf: impl Fn(f64) -> f64,
        lo: f64,
        hi: f64,
        scale: f64,
        n_bulk: usize,
    ) -> Self {
        assert!(lo < hi && scale > 0.0 && n_bulk >= 16);
        let w_lo = (lo / scale).atan();
        let w_hi = (hi / scale).atan();
        let h = (w_hi - w_lo) / (n_bulk as f64 - 1.0);

        let mut ws = Vec::with_capacity(n_bulk + 240);
        // Geometric approach to the left end from inside.
        for k in (1..=120).rev() {
            ws.push(w_lo + h * 0.75_f64.powi(k));
        }
        for i in 0..n_bulk {
            ws.push(w_lo + h * i as f64);
        }
        for k in 1..=120 {
            ws.push(w_hi - h * 0.75_f64.powi(k));
        }
        ws.sort_unstable_by(f64::total_cmp);
        ws.dedup();

        let mut xs: Vec<f64> = ws.iter().map(|w| scale * w.tan()).collect();
        xs.dedup();
        let fs: Vec<f64> = xs.iter().map(|&x| cdf(x)).collect();
        Self { xs, fs }
    }

    pub fn eval(&self, x: f64) -> f64 {
        if x <= self.xs[0] {
            return self.fs[0];
        }
        if x >= *self.xs.last().unwrap() {
            return *self.fs.last().unwrap();
        }
        let idx = self.xs.partition_point(|&v| v <= x);
        let (x0, x1) = (self.xs[idx - 1], self.xs[idx]);
        let (f0, f1) = (self.fs[idx - 1], self.fs[idx]);
        if x1 == x0 {
            return f0;
        }
        f0 + (f1 - f0) * (x - x0) / (x1 - x0)
    }

    pub fn nodes(&self) -> usize {
        self.xs.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::special::normal_cdf;

    #[test]
    fn dkw_band_at_1e5() {
        // √(ln 200 / 2e5) = 0.005147 — the headroom quoted by every KS tolerance.
        assert!((dkw_99(100_000) - 0.005_147).abs() < 1e-5);
    }

    #[test]
    fn ks_one_sample_exact_small_case() {
        // xs = [0.25, 0.5], F = identity: ECDF hits 1 at 0.5 while F is 0.5.
        let d = ks_statistic_sorted(&[0.25, 0.5], |x| x);
        assert!((d - 0.5).abs() < 1e-15);
        let d = ks_statistic_sorted(&[0.25, 0.75], |x| x);
        assert!((d - 0.25).abs() < 1e-15);
    }

    #[test]
    fn ks_handles_ties_and_step_references() {
        // Discrete sample {0,0,1,1} vs the matching step CDF: D = 0, provided
        // the left limits of the reference are supplied.
        let cdf = |x: f64| {
            if x < 0.0 {
                0.0
            } else if x < 1.0 {
                0.5
            } else {
                1.0
            }
        };
        let cdf_left = |x: f64| {
            if x <= 0.0 {
                0.0
            } else if x <= 1.0 {
                0.5
            } else {
                1.0
            }
        };
        let d = ks_statistic_sorted_left(&[0.0, 0.0, 1.0, 1.0], &cdf, &cdf_left);
        assert!(d < 1e-15);
    }

    #[test]
    fn ks_two_sample_identical_and_disjoint() {
        let a = [1.0, 2.0, 3.0];
        assert_eq!(ks_two_sample(&a, &a), 0.0);
        let b = [10.0, 11.0];
        assert_eq!(ks_two_sample(&a, &b), 1.0);
    }

    #[test]
    fn tabulated_normal_cdf_interpolates_well() {
        let t = TabulatedCdf::build(normal_cdf, -9.0, 9.0, 1.0, 1601);
        for i in 0..200 {
            let x = -6.0 + 12.0 * i as f64 / 199.0;
            assert!((t.eval(x) - normal_cdf(x)).abs() < 5e-4);
        }
        assert_eq!(t.eval(-1e9), t.eval(-9.5));
        assert_eq!(t.eval(1e9), t.eval(9.5));
    }

    #[test]
    fn tabulated_cauchy_resolves_deep_tail() {
        let cauchy = |x: f64| 0.5 + x.atan() / std::f64::consts::PI;
        let t = TabulatedCdf::build(cauchy, -4e4, 4e4, 1.0, 1601);
        for &x in &[-3e4, -500.0, -2.0, 0.0, 1.0, 777.0, 3.9e4] {
            assert!(
                (t.eval(x) - cauchy(x)).abs() < 5e-4,
                "x={x}: {} vs {}",
                t.eval(x),
                cauchy(x)
            );
        }
    }
}
