//! Report rendering: JSON, CSV and a fixed-width table.
//!
//! Report bodies contain no timestamps or other run metadata, so identical
//! inputs always render to identical bytes.

use std::fmt::Write as _;

use serde::Serialize;

use crate::balance::{BalanceReport, SignPattern};
use crate::census::{CensusTable, TriadType};
use crate::metrics::NetworkStats;

/// Percentage with two decimals, e.g. `92.37%`.
pub fn percent(x: f64) -> String {
    format!("{:.2}%", x * 100.0)
}

fn percent_or_na(x: Option<f64>) -> String {
    x.map(percent).unwrap_or_else(|| "n/a".into())
}

fn number_or_empty(x: Option<f64>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

#[derive(Serialize)]
struct TypeRow {
    #[serde(rename = "type")]
    kind: TriadType,
    count: u64,
    completely_balanced: u64,
    partially_balanced: u64,
    completely_imbalanced: u64,
    balance_ratio: Option<f64>,
    balance_ratio_exact: Option<String>,
    nonzero_count: u64,
    zero_count: u64,
    nonzero_share: Option<f64>,
}

#[derive(Serialize)]
struct TotalRow {
    count: u64,
    completely_balanced: u64,
    partially_balanced: u64,
    completely_imbalanced: u64,
    overall_balance: Option<f64>,
}

#[derive(Serialize)]
struct PatternRow {
    pattern: &'static str,
    count: u64,
    ratio: Option<f64>,
}

#[derive(Serialize)]
struct ReportDoc {
    triad_types: Vec<TypeRow>,
    total: TotalRow,
    semicycles: Vec<PatternRow>,
    semicycle_total: u64,
}

fn doc(report: &BalanceReport) -> ReportDoc {
    let triad_types = report
        .per_type
        .iter()
        .map(|t| TypeRow {
            kind: t.kind,
            count: t.triad_count,
            completely_balanced: t.cb_count,
            partially_balanced: t.pb_count,
            completely_imbalanced: t.ci_count,
            balance_ratio: t.ratio(),
            balance_ratio_exact: t.ratio_exact().map(|(n, d)| format!("{n}/{d}")),
            nonzero_count: t.nonzero_count,
            zero_count: t.zero_count,
            nonzero_share: t.nonzero_share(),
        })
        .collect();
    let sum = |f: fn(&crate::balance::TypeBalance) -> u64| report.per_type.iter().map(f).sum();
    ReportDoc {
        triad_types,
        total: TotalRow {
            count: sum(|t| t.triad_count),
            completely_balanced: sum(|t| t.cb_count),
            partially_balanced: sum(|t| t.pb_count),
            completely_imbalanced: sum(|t| t.ci_count),
            overall_balance: report.overall(),
        },
        semicycles: SignPattern::ALL
            .iter()
            .map(|&p| PatternRow {
                pattern: p.label(),
                count: report.signs.count(p),
                ratio: report.signs.ratio(p),
            })
            .collect(),
        semicycle_total: report.signs.total(),
    }
}

pub fn balance_json(report: &BalanceReport) -> String {
    let mut s = serde_json::to_string_pretty(&doc(report)).expect("report serializes");
    s.push('\n');
    s
}

/// One row per transitive type plus a `Total` row carrying the overall ratio,
/// then the semicycle sign census.
pub fn balance_csv(report: &BalanceReport) -> String {
    let d = doc(report);
    let mut out = String::from(
        "type,count,completely_balanced,partially_balanced,completely_imbalanced,balance_ratio\n",
    );
    for r in &d.triad_types {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{}",
            r.kind,
            r.count,
            r.completely_balanced,
            r.partially_balanced,
            r.completely_imbalanced,
            number_or_empty(r.balance_ratio)
        );
    }
    let t = &d.total;
    let _ = writeln!(
        out,
        "Total,{},{},{},{},{}",
        t.count,
        t.completely_balanced,
        t.partially_balanced,
        t.completely_imbalanced,
        number_or_empty(t.overall_balance)
    );
    out.push_str("\nsemicycle_type,count,ratio\n");
    for p in &d.semicycles {
        let _ = writeln!(out, "{},{},{}", p.pattern, p.count, number_or_empty(p.ratio));
    }
    let _ = writeln!(out, "Total,{},{}", d.semicycle_total, if d.semicycle_total > 0 { "1" } else { "" });
    out
}

pub fn balance_table(report: &BalanceReport) -> String {
    let d = doc(report);
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:<6} {:>10} {:>12} {:>12} {:>12} {:>14}",
        "Type", "Count", "Completely", "Partially", "Completely", "Balance Ratio"
    );
    let _ = writeln!(
        out,
        "{:<6} {:>10} {:>12} {:>12} {:>12} {:>14}",
        "", "", "Balanced", "Balanced", "Imbalanced", ""
    );
    for r in &d.triad_types {
        let _ = writeln!(
            out,
            "{:<6} {:>10} {:>12} {:>12} {:>12} {:>14}",
            r.kind.label(),
            r.count,
            r.completely_balanced,
            r.partially_balanced,
            r.completely_imbalanced,
            percent_or_na(r.balance_ratio)
        );
    }
    let t = &d.total;
    let _ = writeln!(
        out,
        "{:<6} {:>10} {:>12} {:>12} {:>12} {:>14}",
        "Total",
        t.count,
        t.completely_balanced,
        t.partially_balanced,
        t.completely_imbalanced,
        format!("B_avg = {}", percent_or_na(t.overall_balance))
    );
    out.push('\n');
    let _ = writeln!(out, "{:<14} {:>10} {:>12}", "Semicycle type", "Counts", "Ratio-Total");
    for p in &d.semicycles {
        let ratio = p.ratio.map(|r| format!("{r:.4}")).unwrap_or_else(|| "n/a".into());
        let _ = writeln!(out, "{:<14} {:>10} {:>12}", p.pattern, p.count, ratio);
    }
    let _ = writeln!(out, "{:<14} {:>10}", "Total", d.semicycle_total);
    out
}

pub fn census_json(table: &CensusTable) -> String {
    let mut s = serde_json::to_string_pretty(table).expect("census serializes");
    s.push('\n');
    s
}

pub fn census_table(table: &CensusTable) -> String {
    let mut out = format!("{:<6} {:>14}\n", "Type", "Count");
    for (t, n) in table.iter() {
        let _ = writeln!(out, "{:<6} {:>14}", t.label(), n);
    }
    let _ = writeln!(out, "{:<6} {:>14}", "Total", table.total());
    out
}

#[derive(Serialize)]
struct StatRow {
    measure: &'static str,
    value: Option<f64>,
}

pub fn stats_json(stats: &NetworkStats) -> String {
    let rows: Vec<StatRow> = stats
        .rows()
        .into_iter()
        .map(|(measure, value)| StatRow { measure, value })
        .collect();
    let mut s = serde_json::to_string_pretty(&rows).expect("stats serialize");
    s.push('\n');
    s
}

pub fn stats_csv(stats: &NetworkStats) -> String {
    let mut out = String::from("measure,value\n");
    for (label, value) in stats.rows() {
        let _ = writeln!(out, "{},{}", label, number_or_empty(value));
    }
    out
}

pub fn stats_table(stats: &NetworkStats) -> String {
    let mut out = String::new();
    for (label, value) in stats.rows() {
        let v = value
            .map(|v| if v.fract() == 0.0 { format!("{v}") } else { format!("{v:.4}") })
            .unwrap_or_else(|| "n/a".into());
        let _ = writeln!(out, "{label:<32} {v:>12}");
    }
    out
}
