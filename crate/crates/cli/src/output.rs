//! Report emission: a JSON envelope {experiment, parameters, per-kn/cells,
//! verdict, margins} plus a per-row CSV for plotting, both byte-identical
//! across runs of the same config. Timestamps and environment live in a
//! separate metadata file so they cannot break reproducibility.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::registry::ReportBody;
use crate::CliError;

#[derive(Serialize)]
struct Envelope<'a> {
    experiment: &'a str,
    parameters: &'a BTreeMap<String, serde_json::Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    per_kn: Option<serde_json::Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    cells: Option<serde_json::Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    rows: Option<serde_json::Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    constant: Option<f64>,
    verdict: String,
    margins: serde_json::Value,
    description: String,
}

pub struct WrittenReports {
    pub json: PathBuf,
    pub csv: PathBuf,
    pub metadata: PathBuf,
}

pub fn write_reports(
    out_dir: &Path,
    name: &str,
    parameters: &BTreeMap<String, serde_json::Value>,
    body: &ReportBody,
    workers: usize,
) -> Result<WrittenReports, CliError> {
    std::fs::create_dir_all(out_dir)
        .map_err(|e| CliError::Validation(format!("cannot create {out_dir:?}: {e}")))?;

    let envelope = match body {
        ReportBody::Trend(r) => Envelope {
            experiment: name,
            parameters,
            per_kn: Some(serde_json::to_value(&r.per_kn).expect("serializable")),
            cells: None,
            rows: None,
            constant: None,
            verdict: r.verdict.to_string(),
            margins: serde_json::to_value(r.margins).expect("serializable"),
            description: r.reference.clone(),
        },
        ReportBody::Bound(r) => Envelope {
            experiment: name,
            parameters,
            per_kn: None,
            cells: Some(serde_json::to_value(&r.cells).expect("serializable")),
            rows: None,
            constant: None,
            verdict: r.verdict.to_string(),
            margins: serde_json::json!({ "n_samples": r.n_samples, "se_multiplier": 3 }),
            description: r.description.clone(),
        },
        ReportBody::Tightness(r) => Envelope {
            experiment: name,
            parameters,
            per_kn: None,
            cells: Some(serde_json::to_value(&r.cells).expect("serializable")),
            rows: None,
            constant: None,
            verdict: r.verdict.to_string(),
            margins: serde_json::json!({ "n_samples": r.n_samples, "se_multiplier": 3 }),
            description: r.description.clone(),
        },
        ReportBody::Condition(r) => Envelope {
            experiment: name,
            parameters,
            per_kn: None,
            cells: None,
            rows: Some(serde_json::to_value(&r.rows).expect("serializable")),
            constant: r.constant,
            verdict: r.verdict.to_string(),
            margins: serde_json::json!({ "columns": r.columns }),
            description: r.description.clone(),
        },
    };

    let json_path = out_dir.join(format!("{name}-report.json"));
    let csv_path = out_dir.join(format!("{name}-report.csv"));
    let meta_path = out_dir.join(format!("{name}-metadata.json"));

    let mut json = serde_json::to_string_pretty(&envelope).expect("serializable");
    json.push('\n');
    write_atomic(&json_path, json.as_bytes())?;

    let mut csv = Vec::new();
    write_csv(&mut csv, body).map_err(io_err)?;
    write_atomic(&csv_path, &csv)?;

    let meta = serde_json::json!({
        "experiment": name,
        "workers": workers,
        "version": env!("CARGO_PKG_VERSION"),
        "unix_time_secs": std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map(|d| d.as_secs())
            .unwrap_or(0),
    });
    write_atomic(
        &meta_path,
        format!("{}\n", serde_json::to_string_pretty(&meta).unwrap()).as_bytes(),
    )?;

    Ok(WrittenReports {
        json: json_path,
        csv: csv_path,
        metadata: meta_path,
    })
}

fn write_csv<W: Write>(w: &mut W, body: &ReportBody) -> std::io::Result<()> {
    match body {
        ReportBody::Trend(r) => {
            writeln!(w, "kn,ks,dkw_99")?;
            for p in &r.per_kn {
                writeln!(w, "{},{},{}", p.kn, p.ks, p.dkw_99)?;
            }
        }
        ReportBody::Bound(r) => {
            writeln!(w, "eps,t,estimate,se,bound,pass")?;
            for c in &r.cells {
                let eps = c.eps.map(|e| e.to_string()).unwrap_or_default();
                writeln!(
                    w,
                    "{eps},{},{},{},{},{}",
                    c.t, c.estimate, c.se, c.bound, c.pass
                )?;
            }
        }
        ReportBody::Tightness(r) => {
            writeln!(
                w,
                "t1,t,t2,eps,joint,joint_se,product,product_se,bound,bound_pass,factorization_pass"
            )?;
            for c in &r.cells {
                writeln!(
                    w,
                    "{},{},{},{},{},{},{},{},{},{},{}",
                    c.t1,
                    c.t,
                    c.t2,
                    c.eps,
                    c.joint,
                    c.joint_se,
                    c.product,
                    c.product_se,
                    c.bound,
                    c.bound_pass,
                    c.factorization_pass
                )?;
            }
        }
        ReportBody::Condition(r) => {
            writeln!(w, "kn,{}", r.columns.join(","))?;
            for row in &r.rows {
                let vals: Vec<String> = row.values.iter().map(|v| v.to_string()).collect();
                writeln!(w, "{},{}", row.kn, vals.join(","))?;
            }
        }
    }
    Ok(())
}

fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    std::fs::write(path, bytes)
        .map_err(|e| CliError::Validation(format!("cannot write {path:?}: {e}")))
}

fn io_err(e: std::io::Error) -> CliError {
    CliError::Validation(format!("report serialization failed: {e}"))
}
