//! Text and JSON renderings of a [`FactorReport`].

use crate::pipeline::{FactorReport, PhaseStats};
use serde::Serialize;
use std::fmt::Write;

/// Row labels of the timing table.
pub const STAT_LABELS: [&str; 4] = [
    "Total time (ms)",
    "Non-cyclotomic (ms)",
    "Cyclotomic (ms)",
    "Gcd computations (ms)",
];

/// Human-readable report: a unit line, a power-of-`x` line, then one
/// `(factor)^mult` line per factor; optionally followed by the timing table.
pub fn format_report(report: &FactorReport, stats: Option<&PhaseStats>) -> String {
    let mut out = String::new();
    writeln!(out, "unit: {}", report.unit()).unwrap();
    writeln!(out, "x^{}", report.x_power).unwrap();
    if report.factors.is_empty() {
        writeln!(
            out,
            "no factors of degree <= {}",
            report.certified_complete_to_degree
        )
        .unwrap();
    }
    for (f, m) in &report.factors {
        writeln!(out, "({f})^{m}").unwrap();
    }
    if let Some(s) = stats {
        out.push_str(&format_stats(s));
    }
    out
}

pub fn format_stats(s: &PhaseStats) -> String {
    let values = [s.total_ms, s.noncyclotomic_ms, s.cyclotomic_ms, s.gcd_ms];
    let width = STAT_LABELS.iter().map(|l| l.len()).max().unwrap();
    let mut out = String::new();
    for (label, v) in STAT_LABELS.iter().zip(values) {
        writeln!(out, "{label:<width$}  {v:>12.1}").unwrap();
    }
    out
}

#[derive(Serialize)]
struct JsonFactor {
    coeffs: Vec<String>,
    mult: u32,
}

#[derive(Serialize)]
struct JsonStats {
    total_ms: f64,
    noncyclotomic_ms: f64,
    cyclotomic_ms: f64,
    gcd_ms: f64,
}

#[derive(Serialize)]
struct JsonReport {
    unit: String,
    x_power: String,
    factors: Vec<JsonFactor>,
    #[serde(skip_serializing_if = "Option::is_none")]
    stats: Option<JsonStats>,
}

/// `{unit, x_power, factors: [{coeffs, mult}], stats?}` with coefficients
/// as decimal strings in ascending degree.
pub fn report_json(report: &FactorReport, stats: Option<&PhaseStats>) -> String {
    let doc = JsonReport {
        unit: report.unit().to_string(),
        x_power: report.x_power.to_string(),
        factors: report
            .factors
            .iter()
            .map(|(f, m)| JsonFactor {
                coeffs: f.coeffs().iter().map(|c| c.to_string()).collect(),
                mult: *m,
            })
            .collect(),
        stats: stats.map(|s| JsonStats {
            total_ms: s.total_ms,
            noncyclotomic_ms: s.noncyclotomic_ms,
            cyclotomic_ms: s.cyclotomic_ms,
            gcd_ms: s.gcd_ms,
        }),
    };
    serde_json::to_string_pretty(&doc).expect("serializable")
}
