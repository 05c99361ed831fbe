//! The experiment registry: named, parameterized verification runs mapped
//! onto the harness in `coxlevy::limits`. Negative controls are registered
//! with `expect_fail` so the exit-code contract can invert for them.

use coxlevy::dist::{GgParams, GigParams, MixingLaw};
use coxlevy::exec::Pool;
use coxlevy::limits::{
    check_condition_18_26, check_condition_24, check_condition_6, check_lemma3_bound,
    check_lemma4_equivalence, check_tightness_bound, clt_normal_experiment,
    cor1_rademacher_cauchy_experiment, run_corollary3_experiment, thm2_gh_experiment,
    BoundReport, ConditionReport, ConditionVariant, TightnessParams, TightnessReport,
    TrendConfig, TrendReport, Verdict,
};
use coxlevy::process::{JumpScheme, MomentCertificate, SubordinatorScheme};

use crate::config::RunConfig;
use crate::CliError;

pub struct ExperimentDef {
    pub name: &'static str,
    pub summary: &'static str,
    /// Negative controls: the expected (and exit-0) verdict is FAIL.
    pub expect_fail: bool,
}

#[derive(Debug, Clone)]
pub enum ReportBody {
    Trend(TrendReport),
    Bound(BoundReport),
    Tightness(TightnessReport),
    Condition(ConditionReport),
}

impl ReportBody {
    pub fn verdict(&self) -> Verdict {
        match self {
            ReportBody::Trend(r) => r.verdict,
            ReportBody::Bound(r) => r.verdict,
            ReportBody::Tightness(r) => r.verdict,
            ReportBody::Condition(r) => r.verdict,
        }
    }
}

pub const EXPERIMENTS: &[ExperimentDef] = &[
    ExperimentDef {
        name: "cor1-rademacher-cauchy",
        summary: "±k^-1/2 jumps on a stable(1/2) clock converge to Cauchy(1/√2)",
        expect_fail: false,
    },
    ExperimentDef {
        name: "clt-normal",
        summary: "±k^-1/2 jumps on a degenerate unit clock converge to Φ",
        expect_fail: false,
    },
    ExperimentDef {
        name: "thm2-gh",
        summary: "shifted two-point jumps on an IG-mixed clock converge to the NIG mixture",
        expect_fail: false,
    },
    ExperimentDef {
        name: "cor3-gvg",
        summary: "centered jumps on a Weibull(nu)-mixed clock converge to the GVG mixture",
        expect_fail: false,
    },
    ExperimentDef {
        name: "lemma4",
        summary: "mixed-Poisson equivalence: law(N/k_n) tends to the mixing law",
        expect_fail: false,
    },
    ExperimentDef {
        name: "lemma3",
        summary: "tail bound P(|Q(t)|>=eps) <= (eps^-b m^b)^d (C t)^d1 on an (eps,t) grid",
        expect_fail: false,
    },
    ExperimentDef {
        name: "tightness",
        summary: "quadratic-increment bound plus independence factorization on 5 triples",
        expect_fail: false,
    },
    ExperimentDef {
        name: "cond6-stable",
        summary: "E Λ^δ(t) <= (C t)^δ₁ for the stable clock's self-similarity certificate",
        expect_fail: false,
    },
    ExperimentDef {
        name: "cond18-paper",
        summary: "C_n^{δ₁/δ}·m_n^β stays bounded for the stable-clock construction",
        expect_fail: false,
    },
    ExperimentDef {
        name: "cond18-negative-control",
        summary: "C_n = k_n with m¹ = k_n^-1/2 diverges — expected FAIL",
        expect_fail: true,
    },
    ExperimentDef {
        name: "cond24-baseline",
        summary: "k_n·a_n → 0, k_n·σ²_n → 1, Lindeberg → 0 for ±k^-1/2 jumps",
        expect_fail: false,
    },
    ExperimentDef {
        name: "cond24-negative-control",
        summary: "heavy-tailed jumps without a second moment — expected FAIL",
        expect_fail: true,
    },
];

pub fn find(name: &str) -> Option<&'static ExperimentDef> {
    EXPERIMENTS.iter().find(|e| e.name == name)
}

pub fn run(name: &str, cfg: &RunConfig, workers: usize) -> Result<ReportBody, CliError> {
    let def = find(name).ok_or_else(|| {
        let names: Vec<&str> = EXPERIMENTS.iter().map(|e| e.name).collect();
        CliError::Validation(format!(
            "unknown experiment {name:?}; available: {}",
            names.join(", ")
        ))
    })?;
    let pool = Pool::new(workers);
    let seed = cfg.seed;
    let trend_cfg = TrendConfig {
        kn_values: cfg.kn_values(),
        n_samples: cfg.n_samples(),
        tolerance: 0.02,
    };
    let params = &cfg.experiment.params;

    let body = match def.name {
        "cor1-rademacher-cauchy" => ReportBody::Trend(
            cor1_rademacher_cauchy_experiment(&trend_cfg, &pool, seed).map_err(numerical)?,
        ),
        "clt-normal" => {
            ReportBody::Trend(clt_normal_experiment(&trend_cfg, &pool, seed).map_err(numerical)?)
        }
        "thm2-gh" => {
            ReportBody::Trend(thm2_gh_experiment(&trend_cfg, &pool, seed).map_err(numerical)?)
        }
        "cor3-gvg" => {
            let nu = params.nu.unwrap_or(1.0);
            ReportBody::Trend(
                run_corollary3_experiment(nu, &trend_cfg, &pool, seed)
                    .map_err(|e| CliError::Validation(e.to_string()))?,
            )
        }
        "lemma4" => {
            let mixing = match params.mixing.as_deref().unwrap_or("exponential") {
                "exponential" => MixingLaw::Gg(
                    GgParams::new(1.0, 1.0, 1.0).expect("unit exponential is valid"),
                ),
                "gig" => MixingLaw::Gig(
                    GigParams::new(-0.5, 1.0, 1.0).expect("IG member is valid"),
                ),
                other => {
                    return Err(CliError::Validation(format!(
                        "lemma4 mixing must be \"exponential\" or \"gig\", got {other:?}"
                    )))
                }
            };
            ReportBody::Trend(
                check_lemma4_equivalence(&mixing, &cfg.kn_values(), cfg.n_samples(), &pool, seed)
                    .map_err(numerical)?,
            )
        }
        "lemma3" => {
            let (jumps, scheme) = lemma3_preset(params.preset.as_deref())?;
            ReportBody::Bound(
                check_lemma3_bound(
                    &jumps,
                    &scheme,
                    &[1.0, 2.0, 4.0],
                    &[0.1, 0.5, 1.0],
                    cfg.n_samples(),
                    &pool,
                    seed,
                )
                .map_err(numerical)?,
            )
        }
        "tightness" => {
            let (jumps, scheme, tp) = tightness_preset(params.preset.as_deref())?;
            let eps = params.eps.unwrap_or(2.0);
            ReportBody::Tightness(
                check_tightness_bound(
                    &jumps,
                    &scheme,
                    &tp,
                    &TIGHTNESS_TRIPLES,
                    eps,
                    cfg.n_samples(),
                    &pool,
                    seed,
                )
                .map_err(numerical)?,
            )
        }
        "cond6-stable" => {
            let scheme = SubordinatorScheme::stable_with_certificate(0.5, 0.25)
                .expect("paper certificate parameters are valid");
            ReportBody::Bound(
                check_condition_6(
                    &scheme,
                    &[0.1, 0.25, 0.5, 0.75, 1.0],
                    cfg.n_samples(),
                    &pool,
                    seed,
                )
                .map_err(numerical)?,
            )
        }
        "cond18-paper" => {
            let family = |_kn: u64| {
                (
                    JumpScheme::rademacher_unit(1),
                    SubordinatorScheme::stable_with_certificate(0.5, 0.25).unwrap(),
                )
            };
            ReportBody::Condition(
                check_condition_18_26(
                    &family,
                    &cfg.kn_values(),
                    ConditionVariant::FractionalMoment,
                )
                .map_err(numerical)?,
            )
        }
        "cond18-negative-control" => {
            let family = |kn: u64| {
                (
                    JumpScheme::rademacher_scaled(kn),
                    SubordinatorScheme::deterministic(1.0)
                        .unwrap()
                        .with_certificate(MomentCertificate::new(1.0, 1.0, kn as f64).unwrap()),
                )
            };
            ReportBody::Condition(
                check_condition_18_26(
                    &family,
                    &cfg.kn_values(),
                    ConditionVariant::FractionalMoment,
                )
                .map_err(numerical)?,
            )
        }
        "cond24-baseline" => ReportBody::Condition(check_condition_24(
            &JumpScheme::rademacher_scaled,
            &cfg.kn_values(),
            params.eps.unwrap_or(0.05),
            0.0,
            1.0,
        )),
        "cond24-negative-control" => ReportBody::Condition(check_condition_24(
            &|kn| {
                JumpScheme::pareto_symmetric(1.5, (kn as f64).sqrt().recip(), kn)
                    .expect("control parameters are valid")
            },
            &cfg.kn_values(),
            params.eps.unwrap_or(0.05),
            0.0,
            1.0,
        )),
        _ => unreachable!("registry covers every name"),
    };
    Ok(body)
}

pub const TIGHTNESS_TRIPLES: [(f64, f64, f64); 5] = [
    (0.0, 0.5, 1.0),
    (0.1, 0.3, 0.5),
    (0.25, 0.5, 0.75),
    (0.2, 0.2, 0.2),
    (0.4, 0.7, 1.0),
];

fn lemma3_preset(preset: Option<&str>) -> Result<(JumpScheme, SubordinatorScheme), CliError> {
    match preset.unwrap_or("rademacher-deterministic") {
        "rademacher-deterministic" => Ok((
            JumpScheme::rademacher_unit(1),
            SubordinatorScheme::deterministic(1.0).expect("unit slope is valid"),
        )),
        "paper-stable-subordinator" => Ok((
            JumpScheme::rademacher_unit(1),
            SubordinatorScheme::stable_with_certificate(0.5, 0.25)
                .expect("paper certificate parameters are valid"),
        )),
        other => Err(CliError::Validation(format!(
            "lemma3 preset must be \"rademacher-deterministic\" or \"paper-stable-subordinator\", got {other:?}"
        ))),
    }
}

fn tightness_preset(
    preset: Option<&str>,
) -> Result<(JumpScheme, SubordinatorScheme, TightnessParams), CliError> {
    match preset.unwrap_or("rademacher-deterministic") {
        "rademacher-deterministic" => {
            let jumps = JumpScheme::rademacher_unit(1);
            let scheme = SubordinatorScheme::deterministic(1.0).expect("unit slope is valid");
            // K = C^{δ₁/δ}·m¹ = 1 with β = δ = δ₁ = 1.
            let tp = TightnessParams::new(1.0, 1.0, 1.0).expect("valid");
            Ok((jumps, scheme, tp))
        }
        "paper-stable-subordinator" => {
            let jumps = JumpScheme::rademacher_unit(1);
            // δ = 0.35 keeps γ = δ₁ = 0.7 strictly above 1/2.
            let scheme = SubordinatorScheme::stable_with_certificate(0.5, 0.35)
                .expect("certificate parameters are valid");
            let cert = scheme.certificate.expect("just attached");
            let k = cert.c_n.powf(cert.delta1 / cert.delta) * jumps.moments().m_beta;
            let tp = TightnessParams::new(k, cert.delta * jumps.moments().beta, cert.delta1)
                .expect("gamma > 1/2 by construction");
            Ok((jumps, scheme, tp))
        }
        other => Err(CliError::Validation(format!(
            "tightness preset must be \"rademacher-deterministic\" or \"paper-stable-subordinator\", got {other:?}"
        ))),
    }
}

fn numerical(e: coxlevy::process::ProcessError) -> CliError {
    CliError::Numerical(e.to_string())
}
