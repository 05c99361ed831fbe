//! Typed, serializable verdicts. Each report carries the raw margins its
//! verdict was computed from.

use serde::{Deserialize, Serialize};

use crate::stats::dkw_99;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    Pass,
    Fail,
}

impl Verdict {
    pub fn passed(self) -> bool {
        self == Verdict::Pass
    }

    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Verdict::Pass => write!(f, "PASS"),
            Verdict::Fail => write!(f, "FAIL"),
        }
    }
}

/// One KS measurement along a k_n schedule.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct KnPoint {
    pub kn: u64,
    pub ks: f64,
    pub dkw_99: f64,
}

/// Margins behind a trend verdict: the final KS vs its tolerance and the
/// worst consecutive rise vs the DKW noise allowance.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct TrendMargins {
    pub first_ks: f64,
    pub final_ks: f64,
    pub final_tolerance: f64,
    pub worst_rise: f64,
    pub rise_allowance: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TrendReport {
    pub reference: String,
    pub per_kn: Vec<KnPoint>,
    pub margins: TrendMargins,
    pub verdict: Verdict,
}

impl TrendReport {
    /// Trend contract: KS nonincreasing across k_n up to paired 99% DKW
    /// bands, final KS at most `tolerance`.
    pub fn evaluate(reference: String, points: Vec<KnPoint>, tolerance: f64) -> Self {
        assert!(!points.is_empty());
        let first = points.first().unwrap();
        let last = points.last().unwrap();
        let mut worst_rise = f64::NEG_INFINITY;
        let mut rise_allowance = 0.0;
        for w in points.windows(2) {
            let rise = w[1].ks - w[0].ks;
            let allow = w[0].dkw_99 + w[1].dkw_99;
            if rise - allow > worst_rise - rise_allowance {
                worst_rise = rise;
                rise_allowance = allow;
            }
        }
        if points.len() == 1 {
            worst_rise = 0.0;
            rise_allowance = 0.0;
        }
        let end_to_end_ok = last.ks <= first.ks + first.dkw_99 + last.dkw_99;
        let monotone_ok = worst_rise <= rise_allowance;
        let final_ok = last.ks <= tolerance;
        let margins = TrendMargins {
            first_ks: first.ks,
            final_ks: last.ks,
            final_tolerance: tolerance,
            worst_rise,
            rise_allowance,
        };
        Self {
            reference,
            per_kn: points,
            margins,
            verdict: Verdict::from_bool(end_to_end_ok && monotone_ok && final_ok),
        }
    }
}

/// One cell of a moment- or concentration-bound check; `eps` is present
/// only for exceedance-probability checks.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct BoundCell {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eps: Option<f64>,
    pub t: f64,
    pub estimate: f64,
    pub se: f64,
    pub bound: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BoundReport {
    pub description: String,
    pub n_samples: usize,
    pub cells: Vec<BoundCell>,
    pub verdict: Verdict,
}

impl BoundReport {
    pub fn from_cells(description: String, n_samples: usize, cells: Vec<BoundCell>) -> Self {
        let verdict = Verdict::from_bool(cells.iter().all(|c| c.pass));
        Self {
            description,
            n_samples,
            cells,
            verdict,
        }
    }
}

/// One (t₁, t, t₂) triple of the tightness-bound check, with the
/// independence factorization margin.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct TightnessCell {
    pub t1: f64,
    pub t: f64,
    pub t2: f64,
    pub eps: f64,
    pub joint: f64,
    pub joint_se: f64,
    pub product: f64,
    pub product_se: f64,
    pub bound: f64,
    pub bound_pass: bool,
    pub factorization_pass: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TightnessReport {
    pub description: String,
    pub n_samples: usize,
    pub cells: Vec<TightnessCell>,
    pub verdict: Verdict,
}

impl TightnessReport {
    pub fn from_cells(description: String, n_samples: usize, cells: Vec<TightnessCell>) -> Self {
        let verdict =
            Verdict::from_bool(cells.iter().all(|c| c.bound_pass && c.factorization_pass));
        Self {
            description,
            n_samples,
            cells,
            verdict,
        }
    }
}

/// One k_n row of a condition check; the meaning of `values` is named by
/// the report's `columns`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConditionRow {
    pub kn: u64,
    pub values: Vec<f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ConditionReport {
    pub description: String,
    pub columns: Vec<String>,
    pub rows: Vec<ConditionRow>,
    /// Reported limiting constant (e.g. the running supremum K̂), when the
    /// condition defines one.
    pub constant: Option<f64>,
    pub verdict: Verdict,
}

/// Helper for binomial standard errors of an empirical probability.
pub(crate) fn binomial_se(p_hat: f64, n: usize) -> f64 {
    (p_hat * (1.0 - p_hat) / n as f64).sqrt()
}

/// Helper shared by trend experiments.
pub(crate) fn kn_point(kn: u64, ks: f64, n: usize) -> KnPoint {
    KnPoint {
        kn,
        ks,
        dkw_99: dkw_99(n),
    }
}
