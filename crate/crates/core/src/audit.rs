//! Audit records, report emission, and the lcm-reciprocal sum.
//!
//! Every check in the toolkit funnels into `BoundAuditRecord`: one computed
//! quantity, one bound, their ratio, and a pass flag. Statements with a free
//! implied constant carry the `ratio-only` marker in their note and are never
//! converted into invented pass thresholds.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{harmonic_prefix, SieveTables};
use crate::sum::NeumaierSum;

/// Marker used in `note` for records whose statement has an unspecified
/// implied constant; such records report a ratio and are exempt from
/// pass/fail semantics.
pub const RATIO_ONLY: &str = "ratio-only";

/// One (quantity, bound) comparison.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundAuditRecord {
    pub name: String,
    pub inputs: BTreeMap<String, String>,
    pub computed: f64,
    pub bound: f64,
    pub ratio: f64,
    pub pass: bool,
    pub note: String,
}

impl BoundAuditRecord {
    /// Record with pass semantics: pass iff computed <= bound.
    /// ratio = computed/bound when bound > 0, else 0 (kept finite so records
    /// serialize and compare cleanly).
    pub fn checked(name: impl Into<String>, computed: f64, bound: f64) -> Self {
        let ratio = if bound > 0.0 { computed / bound } else { 0.0 };
        Self {
            name: name.into(),
            inputs: BTreeMap::new(),
            computed,
            bound,
            ratio,
            pass: computed <= bound,
            note: String::new(),
        }
    }

    /// Record for a <<-style statement: the ratio is data, pass is vacuous.
    pub fn ratio_only(name: impl Into<String>, computed: f64, reference: f64) -> Self {
        let ratio = if reference > 0.0 {
            computed / reference
        } else {
            0.0
        };
        Self {
            name: name.into(),
            inputs: BTreeMap::new(),
            computed,
            bound: reference,
            ratio,
            pass: true,
            note: RATIO_ONLY.to_string(),
        }
    }

    pub fn with_input(mut self, key: &str, value: impl ToString) -> Self {
        self.inputs.insert(key.to_string(), value.to_string());
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        let extra = note.into();
        if self.note.is_empty() {
            self.note = extra;
        } else {
            self.note = format!("{}; {}", self.note, extra);
        }
        self
    }

    pub fn is_ratio_only(&self) -> bool {
        self.note.contains(RATIO_ONLY)
    }

    /// A record counts as failed only when it has pass semantics.
    pub fn failed(&self) -> bool {
        !self.pass && !self.is_ratio_only()
    }
}

/// One named constant with its provenance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConstantEntry {
    pub value: f64,
    /// 50+-digit decimal from the big-integer oracle, when applicable.
    pub high_precision: Option<String>,
    pub provenance: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AuditReport {
    pub toolkit_version: String,
    pub constants_block: BTreeMap<String, ConstantEntry>,
    pub records: Vec<BoundAuditRecord>,
    pub timestamp: String,
}

impl AuditReport {
    pub fn failures(&self) -> Vec<&BoundAuditRecord> {
        self.records.iter().filter(|r| r.failed()).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Csv,
    Json,
}

#[derive(Debug, Error)]
pub enum AuditError {
    #[error("serialization failed: {0}")]
    Serialize(String),
    #[error("lcm sum range: {0}")]
    LcmRange(String),
}

/// Serialize a report. CSV carries the records only, one line each, LF
/// endings; JSON carries the whole report with fields in declaration order.
pub fn emit_report(report: &AuditReport, format: ReportFormat) -> Result<Vec<u8>, AuditError> {
    match format {
        ReportFormat::Json => {
            let mut bytes = serde_json::to_vec_pretty(report)
                .map_err(|e| AuditError::Serialize(e.to_string()))?;
            bytes.push(b'\n');
            Ok(bytes)
        }
        ReportFormat::Csv => {
            let mut out = String::new();
            out.push_str("name,inputs,computed,bound,ratio,pass,note\n");
            for r in &report.records {
                let inputs = r
                    .inputs
                    .iter()
                    .map(|(k, v)| format!("{k}={v}"))
                    .collect::<Vec<_>>()
                    .join(";");
                out.push_str(&format!(
                    "{},{},{},{},{},{},{}\n",
                    csv_field(&r.name),
                    csv_field(&inputs),
                    fmt_f64(r.computed),
                    fmt_f64(r.bound),
                    fmt_f64(r.ratio),
                    r.pass,
                    csv_field(&r.note),
                ));
            }
            Ok(out.into_bytes())
        }
    }
}

pub fn parse_report_json(bytes: &[u8]) -> Result<AuditReport, AuditError> {
    serde_json::from_slice(bytes).map_err(|e| AuditError::Serialize(e.to_string()))
}

fn csv_field(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn fmt_f64(v: f64) -> String {
    // shortest round-trip representation keeps CSV byte-stable
    format!("{v}")
}

/// Sum of reciprocals of least common multiples over n, m <= x, via the
/// rearrangement sum_d phi(d)/d^2 (sum_{n <= x/d} 1/n)^2. O(x log x) overall
/// (the sieve dominates); the naive double loop stays available as an oracle.
pub fn lcm_reciprocal_sum(x: u64) -> Result<(f64, f64), AuditError> {
    if x < 1 || x > 1_000_000 {
        return Err(AuditError::LcmRange(format!("x = {x} outside 1..=10^6")));
    }
    let x = x as usize;
    let tables = SieveTables::build(x);
    let harmonic = harmonic_prefix(x);
    let mut acc = NeumaierSum::new();
    for d in 1..=x {
        let h = harmonic[x / d];
        acc.add(tables.phi[d] as f64 / (d as f64 * d as f64) * h * h);
    }
    let sum = acc.value();
    let lx = (x as f64).ln();
    let ratio = if x >= 3 {
        sum / (lx * lx * lx)
    } else {
        f64::NAN
    };
    Ok((sum, ratio))
}

/// Direct O(x^2) double loop over pairs; the oracle for the rearranged sum.
pub fn lcm_reciprocal_sum_naive(x: u64) -> f64 {
    let x = x as usize;
    let mut acc = NeumaierSum::new();
    for n in 1..=x {
        for m in 1..=x {
            let l = n / gcd(n, m) * m;
            acc.add(1.0 / l as f64);
        }
    }
    acc.value()
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}
