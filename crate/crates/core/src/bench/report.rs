use std::fmt::Write as _;
use std::str::FromStr;

use serde::Serialize;

use super::suite::{RunRecord, RunReport};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ReportFormat {
    #[default]
    Text,
    JsonLines,
}

impl FromStr for ReportFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "text" => Ok(ReportFormat::Text),
            "json-lines" | "jsonl" => Ok(ReportFormat::JsonLines),
            other => Err(format!("unknown report format `{other}`")),
        }
    }
}

/// Field order is the on-disk key order.
#[derive(Serialize)]
struct JsonRecord<'a> {
    algorithm: &'a str,
    s: u32,
    t: u32,
    k: u32,
    count: Option<u64>,
    t1_ns: u64,
    t2_ns: u64,
    total_ns: u64,
    external_reads: Option<u64>,
    external_writes: Option<u64>,
    batches: Option<u64>,
    status: &'a str,
}

impl<'a> From<&'a RunRecord> for JsonRecord<'a> {
    fn from(r: &'a RunRecord) -> Self {
        JsonRecord {
            algorithm: r.algorithm.name(),
            s: r.query.source.0,
            t: r.query.target.0,
            k: r.query.k,
            count: r.count,
            t1_ns: r.t1_ns,
            t2_ns: r.t2_ns,
            total_ns: r.total_ns(),
            external_reads: r.stats.map(|s| s.external_reads),
            external_writes: r.stats.map(|s| s.external_writes),
            batches: r.stats.map(|s| s.batches),
            status: r.status.name(),
        }
    }
}

const TEXT_HEADER: [&str; 12] = [
    "algorithm",
    "s",
    "t",
    "k",
    "count",
    "t1_ns",
    "t2_ns",
    "total_ns",
    "ext_reads",
    "ext_writes",
    "batches",
    "status",
];

/// Renders a report. Text is an aligned table followed by per-algorithm
/// averages; json-lines is one object per record. Non-PEFP records carry
/// `null` tier counters, failed runs a `null` count.
pub fn emit_report(r: &RunReport, format: ReportFormat) -> String {
    match format {
        ReportFormat::JsonLines => r
            .records
            .iter()
            .map(|rec| serde_json::to_string(&JsonRecord::from(rec)).expect("plain struct") + "\n")
            .collect(),
        ReportFormat::Text => text(r),
    }
}

fn text(r: &RunReport) -> String {
    let opt = |v: Option<u64>| v.map_or_else(|| "-".to_string(), |v| v.to_string());
    let mut rows: Vec<Vec<String>> = vec![TEXT_HEADER.iter().map(|h| h.to_string()).collect()];
    for rec in &r.records {
        rows.push(vec![
            rec.algorithm.name().to_string(),
            rec.query.source.to_string(),
            rec.query.target.to_string(),
            rec.query.k.to_string(),
            opt(rec.count),
            rec.t1_ns.to_string(),
            rec.t2_ns.to_string(),
            rec.total_ns().to_string(),
            opt(rec.stats.map(|s| s.external_reads)),
            opt(rec.stats.map(|s| s.external_writes)),
            opt(rec.stats.map(|s| s.batches)),
            rec.status.name().to_string(),
        ]);
    }
    let mut out = table(&rows);

    let summaries = r.summaries();
    if !summaries.is_empty() {
        out.push('\n');
        let mut rows = vec![[
            "algorithm",
            "queries",
            "ok",
            "avg_count",
            "avg_t1_ns",
            "avg_t2_ns",
            "avg_total_ns",
        ]
        .iter()
        .map(|h| h.to_string())
        .collect::<Vec<_>>()];
        for s in summaries {
            rows.push(vec![
                s.algorithm.name().to_string(),
                s.queries.to_string(),
                s.ok.to_string(),
                format!("{:.1}", s.avg_count),
                format!("{:.0}", s.avg_t1_ns),
                format!("{:.0}", s.avg_t2_ns),
                format!("{:.0}", s.avg_total_ns),
            ]);
        }
        out.push_str(&table(&rows));
    }
    out
}

fn table(rows: &[Vec<String>]) -> String {
    let cols = rows[0].len();
    let widths: Vec<usize> = (0..cols)
        .map(|c| rows.iter().map(|r| r[c].len()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for row in rows {
        let line: Vec<String> = row
            .iter()
            .zip(&widths)
            .map(|(cell, &w)| format!("{cell:<w$}"))
            .collect();
        let _ = writeln!(out, "{}", line.join("  ").trim_end());
    }
    out
}
