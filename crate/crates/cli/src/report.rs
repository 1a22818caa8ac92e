//! CSV and JSON writers for sweep reports and the single-shot commands.

use std::io::Write;

use anyhow::Result;
use daubound_core::{SweepConfig, SweepReport, VerificationRow};
use serde::Serialize;

pub const SCHEMA_VERSION: &str = "v1";

/// Seventeen significant digits in scientific notation; `nan`/`inf` otherwise.
pub fn sci(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else if x.is_nan() {
        "nan".to_owned()
    } else if x > 0.0 {
        "inf".to_owned()
    } else {
        "-inf".to_owned()
    }
}

fn opt_sci(x: Option<f64>) -> String {
    x.map(sci).unwrap_or_default()
}

fn opt_int(x: Option<i32>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

fn finite(x: f64) -> Option<f64> {
    x.is_finite().then_some(x)
}

const CSV_HEADER: [&str; 18] = [
    "schema_version",
    "check",
    "m",
    "k",
    "p",
    "j",
    "nu",
    "value",
    "abs_error",
    "lower",
    "upper",
    "margin",
    "status",
    "flags",
    "c_tilde",
    "c",
    "slack",
    "error",
];

fn csv_record(row: &VerificationRow) -> [String; 18] {
    [
        SCHEMA_VERSION.to_owned(),
        row.check.name().to_owned(),
        row.m.to_string(),
        row.k.to_string(),
        sci(row.p),
        opt_int(row.j),
        opt_int(row.nu),
        sci(row.numeric_value),
        sci(row.abs_error),
        opt_sci(row.lower_bound),
        opt_sci(row.upper_bound),
        sci(row.margin),
        row.status.name().to_owned(),
        row.vacuous.labels().join(";"),
        sci(row.c_tilde),
        sci(row.c),
        opt_sci(row.slack),
        row.error.as_ref().map(|e| e.to_string()).unwrap_or_default(),
    ]
}

pub fn write_csv<W: Write>(report: &SweepReport, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for row in &report.rows {
        w.write_record(csv_record(row))?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Serialize)]
struct JsonConfig {
    tol: f64,
    eps: f64,
    g_slack: f64,
    cutoff: f64,
    log_base: &'static str,
    product_tol: f64,
    rel_tol: f64,
    abs_tol: f64,
    decay: Option<[f64; 2]>,
}

#[derive(Serialize)]
struct JsonCounts {
    pass: usize,
    fail: usize,
    vacuous: usize,
    error: usize,
}

#[derive(Serialize)]
struct JsonRow {
    check: &'static str,
    m: u32,
    k: u32,
    p: f64,
    j: Option<i32>,
    nu: Option<i32>,
    value: Option<f64>,
    abs_error: Option<f64>,
    lower: Option<f64>,
    upper: Option<f64>,
    margin: Option<f64>,
    status: &'static str,
    flags: Vec<&'static str>,
    c_tilde: Option<f64>,
    c: Option<f64>,
    slack: Option<f64>,
    error: Option<String>,
}

#[derive(Serialize)]
struct JsonReport {
    schema_version: &'static str,
    check: &'static str,
    config: JsonConfig,
    counts: JsonCounts,
    rows: Vec<JsonRow>,
}

pub fn write_json<W: Write>(report: &SweepReport, cfg: &SweepConfig, mut out: W) -> Result<()> {
    let doc = JsonReport {
        schema_version: SCHEMA_VERSION,
        check: report.check.name(),
        config: JsonConfig {
            tol: cfg.tol,
            eps: cfg.eps,
            g_slack: cfg.g_slack,
            cutoff: cfg.cutoff,
            log_base: cfg.log_base.name(),
            product_tol: cfg.eval.product_tol,
            rel_tol: cfg.quad.rel_tol,
            abs_tol: cfg.quad.abs_tol,
            decay: cfg.decay.map(|(ct, c)| [ct, c]),
        },
        counts: JsonCounts {
            pass: report.counts.pass,
            fail: report.counts.fail,
            vacuous: report.counts.vacuous,
            error: report.counts.error,
        },
        rows: report
            .rows
            .iter()
            .map(|r| JsonRow {
                check: r.check.name(),
                m: r.m,
                k: r.k,
                p: r.p,
                j: r.j,
                nu: r.nu,
                value: finite(r.numeric_value),
                abs_error: finite(r.abs_error),
                lower: r.lower_bound.and_then(finite),
                upper: r.upper_bound.and_then(finite),
                margin: finite(r.margin),
                status: r.status.name(),
                flags: r.vacuous.labels(),
                c_tilde: finite(r.c_tilde),
                c: finite(r.c),
                slack: r.slack,
                error: r.error.as_ref().map(|e| e.to_string()),
            })
            .collect(),
    };
    serde_json::to_writer_pretty(&mut out, &doc)?;
    writeln!(out)?;
    Ok(())
}

/// Two-column `name,value` table for the single-shot commands.
pub fn write_pairs<W: Write>(pairs: &[(String, String)], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["name", "value"])?;
    for (k, v) in pairs {
        w.write_record([k, v])?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_text<W: Write>(pairs: &[(String, String)], mut out: W) -> Result<()> {
    let width = pairs.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    for (k, v) in pairs {
        writeln!(out, "{k:<width$}  {v}")?;
    }
    Ok(())
}

pub fn write_json_value<W: Write, T: Serialize>(value: &T, mut out: W) -> Result<()> {
    serde_json::to_writer_pretty(&mut out, value)?;
    writeln!(out)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_significant_digits() {
        assert_eq!(sci(1.0), "1.0000000000000000e0");
        assert_eq!(sci(0.1), "1.0000000000000001e-1");
        assert_eq!(sci(-2.5e-300), "-2.5000000000000000e-300");
        assert_eq!(sci(f64::NAN), "nan");
        assert_eq!(sci(f64::NEG_INFINITY), "-inf");
        for x in [0.1, 1.0 / 3.0, std::f64::consts::PI, 1e-17, 6.02e23] {
            assert_eq!(sci(x).parse::<f64>().unwrap(), x);
        }
    }
}
