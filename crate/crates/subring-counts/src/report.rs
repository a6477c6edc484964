//! Machine-readable run reports.
//!
//! A [`Report`] echoes the command and its inputs, carries the outputs and
//! per-item pass/fail cells, and serializes to JSON. The *canonical* form
//! excludes volatile fields (timing, timestamp): identical inputs and engine
//! version must produce byte-identical canonical JSON, which the
//! determinism tests compare directly.

use std::collections::BTreeMap;
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};

pub const REPORT_SCHEMA_VERSION: u32 = 1;

/// Verdict of a single report cell.
#[derive(Copy, Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ItemStatus {
    Pass,
    Fail,
    /// Not computed (budget); never counts as a failure unless strict mode
    /// turned it into an error upstream.
    Skipped,
}

/// One labelled check: an actual value, an optional expected value, and the
/// verdict.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ReportItem {
    pub label: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub actual: Option<String>,
    pub status: ItemStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl ReportItem {
    pub fn pass(label: impl Into<String>, actual: impl ToString) -> Self {
        ReportItem {
            label: label.into(),
            expected: None,
            actual: Some(actual.to_string()),
            status: ItemStatus::Pass,
            note: None,
        }
    }

    pub fn compared(
        label: impl Into<String>,
        expected: impl ToString,
        actual: impl ToString,
    ) -> Self {
        let expected = expected.to_string();
        let actual = actual.to_string();
        let status = if expected == actual {
            ItemStatus::Pass
        } else {
            ItemStatus::Fail
        };
        ReportItem {
            label: label.into(),
            expected: Some(expected),
            actual: Some(actual),
            status,
            note: None,
        }
    }

    pub fn skipped(label: impl Into<String>, note: impl Into<String>) -> Self {
        ReportItem {
            label: label.into(),
            expected: None,
            actual: None,
            status: ItemStatus::Skipped,
            note: Some(note.into()),
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

/// Budget echo carried in every report.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BudgetEcho {
    pub max_candidates: u64,
    pub max_seconds: u64,
}

/// The report emitted by every command.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub engine_version: String,
    pub command: String,
    pub inputs: BTreeMap<String, String>,
    pub outputs: BTreeMap<String, String>,
    pub items: Vec<ReportItem>,
    pub notes: Vec<String>,
    pub budget: BudgetEcho,
    /// Wall-clock milliseconds; excluded from the canonical form.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
    /// Seconds since the Unix epoch; excluded from the canonical form.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timestamp_unix: Option<u64>,
}

impl Report {
    pub fn new(command: impl Into<String>, budget: BudgetEcho) -> Self {
        Report {
            schema_version: REPORT_SCHEMA_VERSION,
            engine_version: env!("CARGO_PKG_VERSION").to_string(),
            command: command.into(),
            inputs: BTreeMap::new(),
            outputs: BTreeMap::new(),
            items: Vec::new(),
            notes: Vec::new(),
            budget,
            timing_ms: None,
            timestamp_unix: None,
        }
    }

    pub fn input(&mut self, key: impl Into<String>, value: impl ToString) -> &mut Self {
        self.inputs.insert(key.into(), value.to_string());
        self
    }

    pub fn output(&mut self, key: impl Into<String>, value: impl ToString) -> &mut Self {
        self.outputs.insert(key.into(), value.to_string());
        self
    }

    pub fn push(&mut self, item: ReportItem) {
        self.items.push(item);
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    pub fn stamp(&mut self, timing_ms: u64) {
        self.timing_ms = Some(timing_ms);
        self.timestamp_unix = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .ok()
            .map(|d| d.as_secs());
    }

    pub fn failures(&self) -> usize {
        self.items
            .iter()
            .filter(|i| i.status == ItemStatus::Fail)
            .count()
    }

    pub fn skipped(&self) -> usize {
        self.items
            .iter()
            .filter(|i| i.status == ItemStatus::Skipped)
            .count()
    }

    pub fn all_pass(&self) -> bool {
        self.failures() == 0
    }

    /// Full JSON, including volatile fields when stamped.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Deterministic JSON: volatile fields removed, compact encoding, fixed
    /// key order. Byte-identical across reruns with the same inputs.
    pub fn canonical_json(&self) -> String {
        let mut canonical = self.clone();
        canonical.timing_ms = None;
        canonical.timestamp_unix = None;
        serde_json::to_string(&canonical).expect("report serializes")
    }
}
