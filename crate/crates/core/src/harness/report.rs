//! Running a suite and rendering its reports.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::Duration;

use serde_json::{json, Value};

use super::{audit, Claim, SuiteConfig, TheoremReport, Verdict};
use crate::covering::{BoundValue, SearchOptions};
use crate::error::Result;

pub const SUITE_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteOutcome {
    pub config_hash: String,
    /// In config order.
    pub reports: Vec<TheoremReport>,
}

/// Runs every audit of `config` in order.
pub fn run_suite(config: &SuiteConfig, opts: &SearchOptions) -> Result<SuiteOutcome> {
    let reports = config
        .expand()
        .into_iter()
        .map(|(id, params)| audit(id, &params, opts))
        .collect::<Result<Vec<_>>>()?;
    Ok(SuiteOutcome {
        config_hash: config.hash(),
        reports,
    })
}

impl SuiteOutcome {
    pub fn totals(&self) -> BTreeMap<&'static str, usize> {
        let mut totals: BTreeMap<&'static str, usize> = [
            Verdict::Confirmed,
            Verdict::WithinBounds,
            Verdict::Contradicted,
            Verdict::Unsatisfiable,
            Verdict::SkippedResource,
        ]
        .into_iter()
        .map(|v| (v.as_str(), 0))
        .collect();
        for r in &self.reports {
            *totals
                .get_mut(r.verdict.as_str())
                .expect("all verdicts listed") += 1;
        }
        totals
    }

    /// 3 if any claim is contradicted, else 2 if any audit was skipped, else 0.
    pub fn exit_code(&self) -> i32 {
        let has = |v: Verdict| self.reports.iter().any(|r| r.verdict == v);
        if has(Verdict::Contradicted) {
            3
        } else if has(Verdict::SkippedResource) {
            2
        } else {
            0
        }
    }

    pub fn total_runtime(&self) -> Duration {
        self.reports.iter().map(|r| r.runtime).sum()
    }

    /// Reports plus a suite header. Timings sit in their own section so the rest is
    /// reproducible byte for byte.
    pub fn to_json(&self) -> Value {
        json!({
            "suite": {
                "version": SUITE_VERSION,
                "config_hash": self.config_hash,
                "totals": self.totals(),
            },
            "reports": self.reports,
            "timing": {
                "runtimes_ms": self.reports.iter().map(|r| r.runtime.as_secs_f64() * 1e3).collect::<Vec<_>>(),
            },
        })
    }

    pub fn to_table(&self) -> String {
        let header = ["theorem", "parameters", "claimed", "computed", "verdict"];
        let rows: Vec<[String; 5]> = self
            .reports
            .iter()
            .map(|r| {
                [
                    r.theorem_id.to_string(),
                    compact(&r.parameters),
                    claim_summary(&r.claimed),
                    computed_summary(r),
                    r.verdict.to_string(),
                ]
            })
            .collect();
        let mut widths = header.map(str::len);
        for row in &rows {
            for (w, cell) in widths.iter_mut().zip(row) {
                *w = (*w).max(cell.len());
            }
        }
        let mut out = String::new();
        let mut line = |cells: &[&str]| {
            let joined: Vec<String> = cells
                .iter()
                .zip(widths)
                .map(|(c, w)| format!("{c:<w$}"))
                .collect();
            writeln!(out, "{}", joined.join("  ").trim_end()).unwrap();
        };
        line(&header);
        for row in &rows {
            line(&row.each_ref().map(String::as_str));
        }
        let totals: Vec<String> = self
            .totals()
            .into_iter()
            .map(|(k, v)| format!("{k}={v}"))
            .collect();
        writeln!(out, "\n{} audits: {}", self.reports.len(), totals.join(" ")).unwrap();
        out
    }
}

fn compact(v: &Value) -> String {
    serde_json::to_string(v).expect("values serialize")
}

fn bound_str(b: &BoundValue) -> String {
    match b {
        BoundValue::Radius(r) => r.to_string(),
        BoundValue::Unsatisfiable => "unsat".into(),
    }
}

fn claim_summary(c: &Claim) -> String {
    match c {
        Claim::Exact(r) => format!("r = {r}"),
        Claim::Bounds { lower, upper } => format!("{lower} <= r <= {upper}"),
        Claim::AtMost(s) => format!("r <= {s}"),
        Claim::SphereCovering { paper, exact_ball } => {
            format!("r >= {} (ball {})", bound_str(paper), bound_str(exact_ball))
        }
        Claim::WeightDistributions { hamming, lee } => format!("H{hamming:?} L{lee:?}"),
        Claim::Agreement(names) => names.join(" == "),
    }
}

fn computed_summary(r: &TheoremReport) -> String {
    if let Some(skip) = r.computed.get("skipped") {
        return skip.as_str().unwrap_or_default().to_owned();
    }
    r.computed
        .iter()
        .filter(|(k, v)| {
            !matches!(v, Value::Array(_) | Value::Object(_))
                && k.as_str() != "words_examined"
                && k.as_str() != "method"
        })
        .map(|(k, v)| {
            format!(
                "{k}={}",
                v.as_str().map(str::to_owned).unwrap_or_else(|| compact(v))
            )
        })
        .collect::<Vec<_>>()
        .join(" ")
}
