//! Python bindings: the distribution families, the scalar kernels they are
//! built on, the identity checks, and the named verification experiments.
//!
//! Build with `cargo build -p coxlevy-py --release`; the resulting
//! `libcoxlevy_py.so` imports as the module `coxlevy_py` once renamed to
//! `coxlevy_py.so` (see python/smoke_test.py, which does this for you).

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

use coxlevy::dist::{
    self, GgParams, GgSampler, GigParams, GigSampler, MixingLaw, NvmmSpec, StableParams,
    StableSampler,
};
use coxlevy::special::{self, QuadratureSpec};
use coxlevy::stats;

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn runtime_err(e: impl std::fmt::Display) -> PyErr {
    PyRuntimeError::new_err(e.to_string())
}

fn quad() -> QuadratureSpec {
    QuadratureSpec::new(1e-8, 1e-9, 60_000)
}

/// Standard normal distribution function.
#[pyfunction]
fn normal_cdf(x: f64) -> f64 {
    special::normal_cdf(x)
}

/// Natural log of the gamma function, x > 0.
#[pyfunction]
fn log_gamma(x: f64) -> PyResult<f64> {
    special::log_gamma(x).map_err(value_err)
}

/// Modified Bessel function of the third kind K_nu(z).
#[pyfunction]
fn bessel_k(nu: f64, z: f64) -> PyResult<f64> {
    special::bessel_k(nu, z).map_err(value_err)
}

/// ln K_nu(z); usable where K itself over/underflows.
#[pyfunction]
fn log_bessel_k(nu: f64, z: f64) -> PyResult<f64> {
    special::log_bessel_k(nu, z).map_err(value_err)
}

/// One-sample Kolmogorov-Smirnov statistic of `samples` against the CDF
/// values `reference` evaluated at the sorted samples... computed here from
/// a (sorted) sample array and a Python callable.
#[pyfunction]
fn ks_statistic(mut samples: Vec<f64>, cdf: Bound<'_, PyAny>) -> PyResult<f64> {
    if samples.is_empty() {
        return Err(PyValueError::new_err("samples must be nonempty"));
    }
    samples.sort_unstable_by(f64::total_cmp);
    let n = samples.len() as f64;
    let mut d = 0.0_f64;
    let mut i = 0usize;
    while i < samples.len() {
        let x = samples[i];
        let mut j = i + 1;
        while j < samples.len() && samples[j] == x {
            j += 1;
        }
        let f: f64 = cdf.call1((x,))?.extract()?;
        d = d.max((f - i as f64 / n).abs()).max((j as f64 / n - f).abs());
        i = j;
    }
    Ok(d)
}

/// 99% DKW band for an n-sample empirical CDF.
#[pyfunction]
fn dkw_99(n: usize) -> f64 {
    stats::dkw_99(n)
}

/// Strictly stable law in the (alpha, theta) parametrization.
#[pyclass]
struct Stable {
    params: StableParams,
}

#[pymethods]
impl Stable {
    #[new]
    fn new(alpha: f64, theta: f64) -> PyResult<Self> {
        Ok(Self {
            params: StableParams::new(alpha, theta).map_err(value_err)?,
        })
    }

    #[getter]
    fn alpha(&self) -> f64 {
        self.params.alpha()
    }

    #[getter]
    fn theta(&self) -> f64 {
        self.params.theta()
    }

    /// Characteristic function value at s as an (re, im) pair.
    fn cf(&self, s: f64) -> (f64, f64) {
        let v = self.params.cf_value(s);
        (v.re, v.im)
    }

    /// Distribution function (closed forms where available, CF inversion
    /// otherwise).
    fn cdf(&self, x: f64) -> PyResult<f64> {
        dist::stable_cdf(&self.params, x, &quad()).map_err(runtime_err)
    }

    /// n exact draws using the stream (seed, 0).
    fn sample(&self, n: usize, seed: u64) -> PyResult<Vec<f64>> {
        let sampler = StableSampler::new(self.params).map_err(value_err)?;
        let mut rng = coxlevy::rng::stream(seed, 0);
        Ok((0..n).map(|_| sampler.sample(&mut rng)).collect())
    }
}

/// Generalized inverse Gaussian law.
#[pyclass]
struct Gig {
    params: GigParams,
}

#[pymethods]
impl Gig {
    #[new]
    fn new(nu: f64, mu: f64, lambda: f64) -> PyResult<Self> {
        Ok(Self {
            params: GigParams::new(nu, mu, lambda).map_err(value_err)?,
        })
    }

    fn density(&self, x: f64) -> PyResult<f64> {
        dist::gig_density(&self.params, x).map_err(value_err)
    }

    fn cdf(&self, x: f64) -> PyResult<f64> {
        dist::gig_cdf(&self.params, x, &quad()).map_err(runtime_err)
    }

    fn sample(&self, n: usize, seed: u64) -> Vec<f64> {
        let sampler = GigSampler::new(self.params);
        let mut rng = coxlevy::rng::stream(seed, 0);
        (0..n).map(|_| sampler.sample(&mut rng)).collect()
    }
}

/// Generalized gamma law.
#[pyclass]
struct Gg {
    params: GgParams,
}

#[pymethods]
impl Gg {
    #[new]
    fn new(nu: f64, kappa: f64, delta: f64) -> PyResult<Self> {
        Ok(Self {
            params: GgParams::new(nu, kappa, delta).map_err(value_err)?,
        })
    }

    fn density(&self, x: f64) -> PyResult<f64> {
        dist::gg_density(&self.params, x).map_err(value_err)
    }

    fn cdf(&self, x: f64) -> PyResult<f64> {
        dist::gg_cdf(&self.params, x).map_err(runtime_err)
    }

    fn sample(&self, n: usize, seed: u64) -> Vec<f64> {
        let sampler = GgSampler::new(self.params);
        let mut rng = coxlevy::rng::stream(seed, 0);
        (0..n).map(|_| sampler.sample(&mut rng)).collect()
    }
}

/// Normal variance-mean mixture a·U + sigma·sqrt(U)·N.
#[pyclass]
struct Nvmm {
    spec: NvmmSpec,
}

#[pymethods]
impl Nvmm {
    /// Generalized hyperbolic instance: GIG(nu, mu, lambda) mixing.
    #[staticmethod]
    fn gh(a: f64, sigma: f64, nu: f64, mu: f64, lambda: f64) -> PyResult<Self> {
        let gig = GigParams::new(nu, mu, lambda).map_err(value_err)?;
        Ok(Self {
            spec: NvmmSpec::gh(a, sigma, gig).map_err(value_err)?,
        })
    }

    /// Generalized variance gamma instance: GG(nu, kappa, delta) mixing.
    #[staticmethod]
    fn gvg(a: f64, sigma: f64, nu: f64, kappa: f64, delta: f64) -> PyResult<Self> {
        let gg = GgParams::new(nu, kappa, delta).map_err(value_err)?;
        Ok(Self {
            spec: NvmmSpec::gvg(a, sigma, gg).map_err(value_err)?,
        })
    }

    /// One-sided stable mixing (alpha < 1).
    #[staticmethod]
    fn stable_mixture(a: f64, sigma: f64, alpha: f64) -> PyResult<Self> {
        let mixing = MixingLaw::one_sided_stable(alpha).map_err(value_err)?;
        Ok(Self {
            spec: NvmmSpec::new(a, sigma, mixing).map_err(value_err)?,
        })
    }

    fn cdf(&self, x: f64) -> PyResult<f64> {
        dist::nvmm_cdf(&self.spec, x, &quad()).map_err(runtime_err)
    }

    fn density(&self, x: f64) -> PyResult<f64> {
        dist::nvmm_density(&self.spec, x, &quad()).map_err(runtime_err)
    }

    fn sample(&self, n: usize, seed: u64) -> Vec<f64> {
        let sampler = self.spec.sampler();
        let mut rng = coxlevy::rng::stream(seed, 0);
        (0..n).map(|_| sampler.sample(&mut rng)).collect()
    }
}

/// KS report for the stable product identity Z_{a,0}·Z_{a',1}^{1/a} against
/// G_{aa',0}; returns (statistic, dkw_99).
#[pyfunction]
fn stable_product_check(
    alpha: f64,
    alpha_prime: f64,
    n_samples: usize,
    seed: u64,
) -> PyResult<(f64, f64)> {
    let mut rng = coxlevy::rng::stream(seed, 0);
    let r = dist::stable_product_check(alpha, alpha_prime, n_samples, &mut rng)
        .map_err(value_err)?;
    Ok((r.statistic, r.dkw_99))
}

/// KS report for the Weibull mixed-exponential representation.
#[pyfunction]
fn weibull_mixed_exponential_check(nu: f64, n_samples: usize, seed: u64) -> PyResult<(f64, f64)> {
    let mut rng = coxlevy::rng::stream(seed, 0);
    let r = dist::weibull_mixed_exponential_check(nu, n_samples, &mut rng).map_err(value_err)?;
    Ok((r.statistic, r.dkw_99))
}

/// Simulate a subordinator path on a uniform grid; returns (t, value) lists.
#[pyfunction]
#[pyo3(signature = (kind, cells, seed, alpha=None, shape=None, rate=None, mean=None, slope=None))]
#[allow(clippy::too_many_arguments)]
fn subordinator_path(
    kind: &str,
    cells: usize,
    seed: u64,
    alpha: Option<f64>,
    shape: Option<f64>,
    rate: Option<f64>,
    mean: Option<f64>,
    slope: Option<f64>,
) -> PyResult<(Vec<f64>, Vec<f64>)> {
    use coxlevy::process::{simulate_subordinator, SubordinatorScheme, TimeGrid};
    let need = |v: Option<f64>, what: &str| {
        v.ok_or_else(|| PyValueError::new_err(format!("{kind} needs {what}")))
    };
    let scheme = match kind {
        "stable" => SubordinatorScheme::stable(need(alpha, "alpha")?).map_err(value_err)?,
        "gamma" => SubordinatorScheme::gamma(need(shape, "shape")?, need(rate, "rate")?)
            .map_err(value_err)?,
        "ig" => SubordinatorScheme::inverse_gaussian(need(mean, "mean")?, need(shape, "shape")?)
            .map_err(value_err)?,
        "deterministic" => {
            SubordinatorScheme::deterministic(slope.unwrap_or(1.0)).map_err(value_err)?
        }
        other => {
            return Err(PyValueError::new_err(format!(
                "unknown subordinator kind {other:?}"
            )))
        }
    };
    let grid = TimeGrid::uniform(cells.max(1));
    let mut rng = coxlevy::rng::stream(seed, 0);
    let path = simulate_subordinator(&scheme, &grid, &mut rng).map_err(runtime_err)?;
    Ok((path.grid.points().to_vec(), path.values))
}

/// Run a registered verification experiment; returns the report JSON.
#[pyfunction]
#[pyo3(signature = (name, seed=42, n_samples=100_000, kn=None, nu=None, eps=None, preset=None, mixing=None, workers=1))]
#[allow(clippy::too_many_arguments)]
fn run_experiment(
    name: &str,
    seed: u64,
    n_samples: usize,
    kn: Option<Vec<u64>>,
    nu: Option<f64>,
    eps: Option<f64>,
    preset: Option<String>,
    mixing: Option<String>,
    workers: usize,
) -> PyResult<String> {
    use coxlevy_cli::config::RunConfig;
    use coxlevy_cli::registry::{self, ReportBody};
    let cfg = RunConfig {
        seed,
        experiment: coxlevy_cli::config::ExperimentConfig {
            name: None,
            n_samples: Some(n_samples),
            kn,
            params: coxlevy_cli::config::ExtraParams {
                nu,
                eps,
                preset,
                mixing,
            },
        },
        ..RunConfig::default()
    };
    let body = registry::run(name, &cfg, workers).map_err(value_err)?;
    let json = match &body {
        ReportBody::Trend(r) => serde_json::to_string_pretty(r),
        ReportBody::Bound(r) => serde_json::to_string_pretty(r),
        ReportBody::Tightness(r) => serde_json::to_string_pretty(r),
        ReportBody::Condition(r) => serde_json::to_string_pretty(r),
    }
    .map_err(runtime_err)?;
    Ok(json)
}

/// Names of the registered experiments.
#[pyfunction]
fn list_experiments() -> Vec<String> {
    coxlevy_cli::registry::EXPERIMENTS
        .iter()
        .map(|e| e.name.to_string())
        .collect()
}

#[pymodule]
fn coxlevy_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_function(wrap_pyfunction!(normal_cdf, m)?)?;
    m.add_function(wrap_pyfunction!(log_gamma, m)?)?;
    m.add_function(wrap_pyfunction!(bessel_k, m)?)?;
    m.add_function(wrap_pyfunction!(log_bessel_k, m)?)?;
    m.add_function(wrap_pyfunction!(ks_statistic, m)?)?;
    m.add_function(wrap_pyfunction!(dkw_99, m)?)?;
    m.add_function(wrap_pyfunction!(stable_product_check, m)?)?;
    m.add_function(wrap_pyfunction!(weibull_mixed_exponential_check, m)?)?;
    m.add_function(wrap_pyfunction!(subordinator_path, m)?)?;
    m.add_function(wrap_pyfunction!(run_experiment, m)?)?;
    m.add_function(wrap_pyfunction!(list_experiments, m)?)?;
    m.add_class::<Stable>()?;
    m.add_class::<Gig>()?;
    m.add_class::<Gg>()?;
    m.add_class::<Nvmm>()?;
    Ok(())
}
