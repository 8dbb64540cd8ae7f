//! CSV and JSON serialisation of progress reports and sweeps.
//!
//! CSV output starts with `#`-prefixed lines carrying the crate version and
//! the run configuration, so a file alone is enough to reproduce it.

use std::io::Write;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::search_sim::{ProgressReport, SweepTable};
use crate::VERSION;

fn io_err(e: impl std::fmt::Display) -> Error {
    Error::InvalidParameters(format!("write failed: {e}"))
}

#[derive(Serialize)]
struct ProgressRow<'a> {
    model_kind: String,
    #[serde(rename = "N")]
    n: usize,
    h: usize,
    strategy: &'a str,
    seed: Option<u64>,
    k: usize,
    #[serde(rename = "D_k")]
    d: f64,
    upper_4hk2: f64,
    #[serde(rename = "E_k")]
    e: f64,
    #[serde(rename = "F_k")]
    f: f64,
    lower_exact: f64,
    success_mean: f64,
    success_min: f64,
}

#[derive(Serialize)]
struct SweepCsvRow {
    model_kind: String,
    #[serde(rename = "N")]
    n: usize,
    h: usize,
    strategy: String,
    seed: u64,
    k_star: Option<usize>,
    saturated: bool,
    k_max: usize,
    grover_count: usize,
    floor: f64,
}

fn preamble<W: Write>(out: &mut W, config: &serde_json::Value) -> Result<()> {
    writeln!(out, "# version: {VERSION}").map_err(io_err)?;
    writeln!(out, "# config: {config}").map_err(io_err)?;
    Ok(())
}

/// One row per `(report, k)`.
pub fn write_progress_csv<W: Write>(
    out: &mut W,
    config: &serde_json::Value,
    reports: &[ProgressReport],
) -> Result<()> {
    preamble(out, config)?;
    let mut w = csv::Writer::from_writer(out);
    for r in reports {
        for s in &r.steps {
            w.serialize(ProgressRow {
                model_kind: r.model.kind.to_string(),
                n: r.model.n,
                h: r.model.h,
                strategy: r.provenance.strategy_name(),
                seed: r.provenance.seed(),
                k: s.k,
                d: s.d,
                upper_4hk2: s.upper,
                e: s.e,
                f: s.f,
                lower_exact: s.lower_exact,
                success_mean: s.success_mean,
                success_min: s.success_min,
            })
            .map_err(io_err)?;
        }
    }
    w.flush().map_err(io_err)
}

pub fn write_sweep_csv<W: Write>(
    out: &mut W,
    config: &serde_json::Value,
    table: &SweepTable,
) -> Result<()> {
    preamble(out, config)?;
    let mut w = csv::Writer::from_writer(out);
    for r in &table.rows {
        w.serialize(SweepCsvRow {
            model_kind: table.family.kind.to_string(),
            n: r.n,
            h: r.h,
            strategy: table.strategy.to_string(),
            seed: table.seed,
            k_star: r.k_star,
            saturated: r.saturated,
            k_max: r.k_max,
            grover_count: r.grover_count,
            floor: r.floor,
        })
        .map_err(io_err)?;
    }
    w.flush().map_err(io_err)
}

/// JSON document wrapping any payload with the version and configuration.
#[derive(Debug, Serialize)]
pub struct Envelope<'a, T: Serialize> {
    pub version: &'static str,
    pub config: &'a serde_json::Value,
    pub data: &'a T,
}

pub fn to_json<T: Serialize>(config: &serde_json::Value, data: &T) -> Result<String> {
    serde_json::to_string_pretty(&Envelope {
        version: VERSION,
        config,
        data,
    })
    .map_err(io_err)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::search_sim::{build_schedule, progress_all_items, uniform_start, Strategy};
    use crate::theory_models::quantum_model;

    fn report() -> ProgressReport {
        let q = quantum_model(4).unwrap();
        let s = build_schedule(&q, Strategy::Grover, 0, 2, 1e-9).unwrap();
        progress_all_items(&q, &s, &uniform_start(&q)).unwrap()
    }

    #[test]
    fn csv_layout() {
        let mut buf = Vec::new();
        let cfg = serde_json::json!({"n": 4});
        write_progress_csv(&mut buf, &cfg, &[report()]).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert!(lines[0].starts_with("# version: "));
        assert_eq!(lines[1], "# config: {\"n\":4}");
        assert_eq!(
            lines[2],
            "model_kind,N,h,strategy,seed,k,D_k,upper_4hk2,E_k,F_k,lower_exact,success_mean,success_min"
        );
        assert_eq!(lines.len(), 6);
        assert!(lines[4].starts_with("quantum,4,2,grover,,1,"));
    }

    #[test]
    fn json_roundtrips_report() {
        let r = report();
        let text = to_json(&serde_json::json!({}), &r).unwrap();
        let v: serde_json::Value = serde_json::from_str(&text).unwrap();
        let back: ProgressReport = serde_json::from_value(v["data"].clone()).unwrap();
        assert_eq!(back, r);
    }
}
