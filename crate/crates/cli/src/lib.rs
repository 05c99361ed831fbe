//! Reproducible command-line front end: named experiments, structured
//! config, seed management, and CSV/JSON report emission.
//!
//! Exit codes: 0 success (or the expected verdict for negative controls),
//! 1 verdict failure, 2 usage/validation error, 3 numerical failure.

// `!(x > 0.0)`-style guards reject NaN inputs; keep them.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod config;
pub mod output;
pub mod registry;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use coxlevy::dist::{
    gg_cdf, gg_density, gig_cdf, gig_density, nvmm_cdf, nvmm_density, stable_cdf, GgParams,
    GgSampler, GigParams, GigSampler, MixingLaw, NvmmSpec, StableParams, StableSampler,
};
use coxlevy::process::{
    simulate_compound_poisson, simulate_subordinator, JumpScheme, SubordinatorScheme, TimeGrid,
};
use coxlevy::special::{QuadratureSpec, SpecialError};

use config::RunConfig;

#[derive(Debug)]
pub enum CliError {
    /// Invalid input; the message names the violated invariant. Exit 2.
    Validation(String),
    /// A quadrature or simulation failed numerically. Exit 3.
    Numerical(String),
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Validation(m) | CliError::Numerical(m) => write!(f, "{m}"),
        }
    }
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Validation(_) => 2,
            CliError::Numerical(_) => 3,
        }
    }
}

#[derive(Parser)]
#[command(
    name = "coxlevy",
    version,
    about = "Simulation and verification toolkit for compound Cox processes and their Lévy limits"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Draw n samples from a family; CSV "index,value"
    Sample(SampleArgs),
    /// Evaluate a family's CDF on an x-grid; CSV "x,value"
    Cdf(TableArgs),
    /// Evaluate a family's density on an x-grid; CSV "x,value"
    Density(TableArgs),
    /// Simulate a subordinator or compound Cox path; CSV "t,value"
    SimulatePath(PathArgs),
    /// Run a named verification experiment and write its reports
    Experiment(ExperimentArgs),
    /// List the registered experiments
    ListExperiments,
}

/// Family parameters; which ones are required depends on the family.
#[derive(Args, Debug, Default)]
struct FamilyParams {
    /// Stable characteristic exponent α ∈ (0,2]
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<f64>,
    /// Stable skewness θ, |θ| ≤ min(1, 2/α - 1)
    #[arg(long, allow_hyphen_values = true)]
    theta: Option<f64>,
    /// GIG / GG power index ν (also the Weibull power)
    #[arg(long, allow_hyphen_values = true)]
    nu: Option<f64>,
    /// GIG concentration μ ≥ 0
    #[arg(long, allow_hyphen_values = true)]
    mu: Option<f64>,
    /// GIG rate λ ≥ 0
    #[arg(long, allow_hyphen_values = true)]
    lambda: Option<f64>,
    /// GG shape κ > 0
    #[arg(long, allow_hyphen_values = true)]
    kappa: Option<f64>,
    /// GG / Weibull scale δ > 0
    #[arg(long, allow_hyphen_values = true)]
    delta: Option<f64>,
    /// NVMM location coefficient a
    #[arg(long, allow_hyphen_values = true)]
    a: Option<f64>,
    /// NVMM scale σ > 0
    #[arg(long, allow_hyphen_values = true)]
    sigma: Option<f64>,
    /// NVMM mixing family: gig | gg | stable | degenerate
    #[arg(long)]
    mixing: Option<String>,
    /// Degenerate mixing point c > 0
    #[arg(long, allow_hyphen_values = true)]
    point: Option<f64>,
}

#[derive(Args, Debug)]
struct SampleArgs {
    /// stable | gig | gg | weibull | gh | gvg | nvmm
    family: String,
    #[command(flatten)]
    params: FamilyParams,
    #[arg(short, long)]
    n: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Output file; stdout when omitted
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct TableArgs {
    family: String,
    #[command(flatten)]
    params: FamilyParams,
    /// Single evaluation point
    #[arg(long, allow_hyphen_values = true)]
    x: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    x_min: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    x_max: Option<f64>,
    #[arg(long, default_value_t = 21)]
    points: usize,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct PathArgs {
    /// subordinator | cox
    #[arg(long, default_value = "subordinator")]
    process: String,
    /// stable | gamma | ig | deterministic
    #[arg(long)]
    scheme: String,
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    shape: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    rate: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    ig_mean: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    ig_shape: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    slope: Option<f64>,
    /// rademacher | normal | two-point (cox only)
    #[arg(long, default_value = "rademacher")]
    jump: String,
    #[arg(long, allow_hyphen_values = true)]
    jump_lo: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    jump_hi: Option<f64>,
    #[arg(long, default_value_t = 0.5, allow_hyphen_values = true)]
    jump_p: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    jump_mean: f64,
    #[arg(long, default_value_t = 1.0, allow_hyphen_values = true)]
    jump_sd: f64,
    #[arg(long, default_value_t = 1024)]
    cells: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct ExperimentArgs {
    /// Registered experiment name (see list-experiments)
    name: Option<String>,
    /// TOML config file; flags below override its keys
    #[arg(long)]
    config: Option<PathBuf>,
    /// Comma-separated k_n schedule, e.g. 16,64,256,1024,4096
    #[arg(long, value_delimiter = ',')]
    kn: Option<Vec<u64>>,
    #[arg(short, long)]
    n_samples: Option<usize>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    out_dir: Option<PathBuf>,
    #[arg(long, default_value_t = 1)]
    workers: usize,
    #[arg(long, allow_hyphen_values = true)]
    nu: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    eps: Option<f64>,
    #[arg(long)]
    preset: Option<String>,
    #[arg(long)]
    mixing: Option<String>,
}

/// Parse and dispatch; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            // clap uses 0 for --help/--version and 2 for usage errors.
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(cli: Cli) -> Result<i32, CliError> {
    match cli.command {
        Command::Sample(args) => cmd_sample(args),
        Command::Cdf(args) => cmd_table(args, Mode::Cdf),
        Command::Density(args) => cmd_table(args, Mode::Density),
        Command::SimulatePath(args) => cmd_simulate_path(args),
        Command::Experiment(args) => cmd_experiment(args),
        Command::ListExperiments => {
            let mut out = String::new();
            for def in registry::EXPERIMENTS {
                out.push_str(&format!("{:28} {}\n", def.name, def.summary));
            }
            print!("{out}");
            Ok(0)
        }
    }
}

/// The distribution families reachable from the CLI.
enum Family {
    Stable(StableParams),
    Gig(GigParams),
    Gg(GgParams),
    Nvmm(NvmmSpec),
}

impl Family {
    fn resolve(name: &str, p: &FamilyParams) -> Result<Self, CliError> {
        let need = |v: Option<f64>, flag: &str| {
            v.ok_or_else(|| CliError::Validation(format!("{name} requires --{flag}")))
        };
        let invalid = |e: coxlevy::dist::ParamError| CliError::Validation(e.to_string());
        match name {
            "stable" => Ok(Family::Stable(
                StableParams::new(need(p.alpha, "alpha")?, p.theta.unwrap_or(0.0))
                    .map_err(invalid)?,
            )),
            "gig" => Ok(Family::Gig(
                GigParams::new(
                    need(p.nu, "nu")?,
                    need(p.mu, "mu")?,
                    need(p.lambda, "lambda")?,
                )
                .map_err(invalid)?,
            )),
            "gg" => Ok(Family::Gg(
                GgParams::new(
                    need(p.nu, "nu")?,
                    need(p.kappa, "kappa")?,
                    need(p.delta, "delta")?,
                )
                .map_err(invalid)?,
            )),
            "weibull" => Ok(Family::Gg(
                GgParams::weibull(need(p.nu, "nu")?, p.delta.unwrap_or(1.0)).map_err(invalid)?,
            )),
            "gh" => {
                let gig = GigParams::new(
                    need(p.nu, "nu")?,
                    need(p.mu, "mu")?,
                    need(p.lambda, "lambda")?,
                )
                .map_err(invalid)?;
                Ok(Family::Nvmm(
                    NvmmSpec::gh(p.a.unwrap_or(0.0), p.sigma.unwrap_or(1.0), gig)
                        .map_err(invalid)?,
                ))
            }
            "gvg" => {
                let gg = GgParams::new(
                    need(p.nu, "nu")?,
                    need(p.kappa, "kappa")?,
                    need(p.delta, "delta")?,
                )
                .map_err(invalid)?;
                Ok(Family::Nvmm(
                    NvmmSpec::gvg(p.a.unwrap_or(0.0), p.sigma.unwrap_or(1.0), gg)
                        .map_err(invalid)?,
                ))
            }
            "nvmm" => {
                let mixing = match p.mixing.as_deref() {
                    Some("gig") => MixingLaw::Gig(
                        GigParams::new(
                            need(p.nu, "nu")?,
                            need(p.mu, "mu")?,
                            need(p.lambda, "lambda")?,
                        )
                        .map_err(invalid)?,
                    ),
                    Some("gg") => MixingLaw::Gg(
                        GgParams::new(
                            need(p.nu, "nu")?,
                            need(p.kappa, "kappa")?,
                            need(p.delta, "delta")?,
                        )
                        .map_err(invalid)?,
                    ),
                    Some("stable") => {
                        MixingLaw::one_sided_stable(need(p.alpha, "alpha")?).map_err(invalid)?
                    }
                    Some("degenerate") => {
                        MixingLaw::degenerate(need(p.point, "point")?).map_err(invalid)?
                    }
                    Some(other) => {
                        return Err(CliError::Validation(format!(
                            "nvmm mixing must be gig | gg | stable | degenerate, got {other:?}"
                        )))
                    }
                    None => {
                        return Err(CliError::Validation(
                            "nvmm requires --mixing (gig | gg | stable | degenerate)".into(),
                        ))
                    }
                };
                Ok(Family::Nvmm(
                    NvmmSpec::new(p.a.unwrap_or(0.0), p.sigma.unwrap_or(1.0), mixing)
                        .map_err(invalid)?,
                ))
            }
            other => Err(CliError::Validation(format!(
                "unknown family {other:?}; expected stable | gig | gg | weibull | gh | gvg | nvmm"
            ))),
        }
    }

    fn quad() -> QuadratureSpec {
        QuadratureSpec::new(1e-8, 1e-9, 60_000)
    }

    fn cdf(&self, x: f64) -> Result<f64, CliError> {
        let q = Self::quad();
        match self {
            Family::Stable(p) => {
                stable_cdf(p, x, &q).map_err(|e| num(e, "stable CF inversion integral"))
            }
            Family::Gig(p) => gig_cdf(p, x, &q).map_err(|e| num(e, "GIG density integral")),
            Family::Gg(p) => gg_cdf(p, x).map_err(|e| num(e, "incomplete gamma")),
            Family::Nvmm(spec) => {
                nvmm_cdf(spec, x, &q).map_err(|e| num(e, "variance-mean mixture integral"))
            }
        }
    }

    fn density(&self, x: f64) -> Result<f64, CliError> {
        let q = Self::quad();
        match self {
            Family::Stable(_) => Err(CliError::Validation(
                "stable densities are not provided; use `cdf` (CF inversion covers the CDF only)"
                    .into(),
            )),
            Family::Gig(p) => {
                if x == 0.0 {
                    // Boundary handled per family definition: the x → 0⁺ limit.
                    return Ok(if p.is_gamma_limit() {
                        gamma_density_at_zero(p.nu(), p.lambda() / 2.0)
                    } else {
                        0.0 // exp(-μ/2x) kills any power for μ > 0
                    });
                }
                if x < 0.0 {
                    return Err(CliError::Validation(format!(
                        "GIG density requires x >= 0, got {x}"
                    )));
                }
                gig_density(p, x).map_err(|e| num(e, "GIG density"))
            }
            Family::Gg(p) => {
                if x == 0.0 {
                    let shape_exponent = p.kappa() * p.nu() - 1.0;
                    return Ok(if shape_exponent > 0.0 {
                        0.0
                    } else if shape_exponent == 0.0 {
                        // e.g. the exponential member: |ν|/(δ^{κν} Γ(κ)) = 1/δ.
                        (p.nu().abs().ln()
                            - p.kappa() * p.nu() * p.delta().ln()
                            - libm::lgamma(p.kappa()))
                        .exp()
                    } else {
                        f64::INFINITY
                    });
                }
                if x < 0.0 {
                    return Err(CliError::Validation(format!(
                        "GG density requires x >= 0, got {x}"
                    )));
                }
                gg_density(p, x).map_err(|e| num(e, "GG density"))
            }
            Family::Nvmm(spec) => {
                nvmm_density(spec, x, &q).map_err(|e| num(e, "variance-mean mixture integral"))
            }
        }
    }

    fn sampler(&self) -> Result<FamilySampler, CliError> {
        Ok(match self {
            Family::Stable(p) => FamilySampler::Stable(
                StableSampler::new(*p).map_err(|e| CliError::Validation(e.to_string()))?,
            ),
            Family::Gig(p) => FamilySampler::Gig(GigSampler::new(*p)),
            Family::Gg(p) => FamilySampler::Gg(GgSampler::new(*p)),
            Family::Nvmm(spec) => FamilySampler::Nvmm(Box::new(spec.sampler())),
        })
    }
}

fn gamma_density_at_zero(shape: f64, rate: f64) -> f64 {
    if shape > 1.0 {
        0.0
    } else if shape == 1.0 {
        rate
    } else {
        f64::INFINITY
    }
}

/// Domain violations are usage errors (exit 2); quadrature failures are
/// numerical (exit 3), naming the integral that failed.
fn num(e: SpecialError, what: &str) -> CliError {
    match e {
        SpecialError::Domain(_) => CliError::Validation(format!("{what}: {e}")),
        other => CliError::Numerical(format!("{what}: {other}")),
    }
}

enum FamilySampler {
    Stable(StableSampler),
    Gig(GigSampler),
    Gg(GgSampler),
    Nvmm(Box<coxlevy::dist::NvmmSampler>),
}

impl FamilySampler {
    fn sample(&self, rng: &mut coxlevy::rng::ChaCha8Rng) -> f64 {
        match self {
            FamilySampler::Stable(s) => s.sample(rng),
            FamilySampler::Gig(s) => s.sample(rng),
            FamilySampler::Gg(s) => s.sample(rng),
            FamilySampler::Nvmm(s) => s.sample(rng),
        }
    }
}

fn cmd_sample(args: SampleArgs) -> Result<i32, CliError> {
    if args.n == 0 {
        return Err(CliError::Validation("n must be at least 1".into()));
    }
    let family = Family::resolve(&args.family, &args.params)?;
    let sampler = family.sampler()?;
    let mut rng = coxlevy::rng::stream(args.seed, 0);
    let mut buf = String::with_capacity(args.n * 24);
    buf.push_str("index,value\n");
    for i in 0..args.n {
        let v = sampler.sample(&mut rng);
        buf.push_str(&format!("{i},{v}\n"));
    }
    emit(args.out.as_deref(), &buf)?;
    Ok(0)
}

enum Mode {
    Cdf,
    Density,
}

fn cmd_table(args: TableArgs, mode: Mode) -> Result<i32, CliError> {
    let family = Family::resolve(&args.family, &args.params)?;
    let grid: Vec<f64> = match (args.x, args.x_min, args.x_max) {
        (Some(x), None, None) => vec![x],
        (None, Some(lo), Some(hi)) => {
            if !(lo < hi) || args.points < 2 {
                return Err(CliError::Validation(
                    "need x_min < x_max and at least 2 points".into(),
                ));
            }
            (0..args.points)
                .map(|i| lo + (hi - lo) * i as f64 / (args.points - 1) as f64)
                .collect()
        }
        _ => {
            return Err(CliError::Validation(
                "give either --x or both --x-min and --x-max".into(),
            ))
        }
    };
    let mut buf = String::new();
    buf.push_str("x,value\n");
    for &x in &grid {
        let v = match mode {
            Mode::Cdf => family.cdf(x)?,
            Mode::Density => family.density(x)?,
        };
        buf.push_str(&format!("{x},{v}\n"));
    }
    emit(args.out.as_deref(), &buf)?;
    Ok(0)
}

fn cmd_simulate_path(args: PathArgs) -> Result<i32, CliError> {
    let invalid = |e: coxlevy::dist::ParamError| CliError::Validation(e.to_string());
    let need = |v: Option<f64>, flag: &str| {
        v.ok_or_else(|| CliError::Validation(format!("scheme requires --{flag}")))
    };
    let scheme = match args.scheme.as_str() {
        "stable" => SubordinatorScheme::stable(need(args.alpha, "alpha")?).map_err(invalid)?,
        "gamma" => SubordinatorScheme::gamma(need(args.shape, "shape")?, need(args.rate, "rate")?)
            .map_err(invalid)?,
        "ig" => SubordinatorScheme::inverse_gaussian(
            need(args.ig_mean, "ig-mean")?,
            need(args.ig_shape, "ig-shape")?,
        )
        .map_err(invalid)?,
        "deterministic" => {
            SubordinatorScheme::deterministic(args.slope.unwrap_or(1.0)).map_err(invalid)?
        }
        other => {
            return Err(CliError::Validation(format!(
                "unknown scheme {other:?}; expected stable | gamma | ig | deterministic"
            )))
        }
    };
    if args.cells == 0 {
        return Err(CliError::Validation("cells must be at least 1".into()));
    }
    let grid = TimeGrid::uniform(args.cells);
    let mut rng = coxlevy::rng::stream(args.seed, 0);
    let clock = simulate_subordinator(&scheme, &grid, &mut rng)
        .map_err(|e| CliError::Numerical(e.to_string()))?;

    let path = match args.process.as_str() {
        "subordinator" => clock,
        "cox" => {
            let jumps = match args.jump.as_str() {
                "rademacher" => JumpScheme::rademacher_unit(1),
                "normal" => {
                    JumpScheme::normal(args.jump_mean, args.jump_sd, 1).map_err(invalid)?
                }
                "two-point" => JumpScheme::two_point(
                    need(args.jump_lo, "jump-lo")?,
                    need(args.jump_hi, "jump-hi")?,
                    args.jump_p,
                    1,
                    1.0,
                )
                .map_err(invalid)?,
                other => {
                    return Err(CliError::Validation(format!(
                        "unknown jump kind {other:?}; expected rademacher | normal | two-point"
                    )))
                }
            };
            simulate_compound_poisson(&jumps, &clock, &mut rng)
                .map_err(|e| CliError::Numerical(e.to_string()))?
        }
        other => {
            return Err(CliError::Validation(format!(
                "unknown process {other:?}; expected subordinator | cox"
            )))
        }
    };

    let mut buf = Vec::new();
    path.write_csv(&mut buf)
        .map_err(|e| CliError::Validation(format!("cannot serialize path: {e}")))?;
    emit(
        args.out.as_deref(),
        std::str::from_utf8(&buf).expect("CSV is ASCII"),
    )?;
    Ok(0)
}

fn cmd_experiment(args: ExperimentArgs) -> Result<i32, CliError> {
    let mut cfg = match &args.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    // Flags override config keys.
    if let Some(kn) = args.kn {
        cfg.experiment.kn = Some(kn);
    }
    if let Some(n) = args.n_samples {
        cfg.experiment.n_samples = Some(n);
    }
    if let Some(seed) = args.seed {
        cfg.seed = seed;
    }
    if let Some(dir) = args.out_dir {
        cfg.output_dir = dir;
    }
    if args.nu.is_some() {
        cfg.experiment.params.nu = args.nu;
    }
    if args.eps.is_some() {
        cfg.experiment.params.eps = args.eps;
    }
    if args.preset.is_some() {
        cfg.experiment.params.preset = args.preset;
    }
    if args.mixing.is_some() {
        cfg.experiment.params.mixing = args.mixing;
    }
    let name = args
        .name
        .or_else(|| cfg.experiment.name.clone())
        .ok_or_else(|| {
            CliError::Validation("no experiment name given (argument or config key)".into())
        })?;

    let kn = cfg.kn_values();
    if kn.is_empty() || kn.windows(2).any(|w| w[1] <= w[0]) {
        return Err(CliError::Validation(
            "kn schedule must be nonempty and strictly increasing".into(),
        ));
    }
    if cfg.n_samples() == 0 {
        return Err(CliError::Validation("n_samples must be positive".into()));
    }

    let def = registry::find(&name).ok_or_else(|| {
        let names: Vec<&str> = registry::EXPERIMENTS.iter().map(|e| e.name).collect();
        CliError::Validation(format!(
            "unknown experiment {name:?}; available: {}",
            names.join(", ")
        ))
    })?;

    let body = registry::run(&name, &cfg, args.workers)?;
    let written = output::write_reports(
        &cfg.output_dir,
        &name,
        &cfg.parameter_map(&name),
        &body,
        args.workers,
    )?;

    let verdict = body.verdict();
    let as_expected = verdict.passed() != def.expect_fail;
    println!(
        "experiment {name}: verdict {verdict}{} (report: {})",
        if def.expect_fail { " (negative control)" } else { "" },
        written.json.display()
    );
    Ok(if as_expected { 0 } else { 1 })
}

fn emit(path: Option<&std::path::Path>, content: &str) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, content)
            .map_err(|e| CliError::Validation(format!("cannot write {p:?}: {e}"))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(content.as_bytes())
                .map_err(|e| CliError::Validation(format!("cannot write to stdout: {e}")))
        }
    }
}
