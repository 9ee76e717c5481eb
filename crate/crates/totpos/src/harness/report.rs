//! Report documents emitted by the probe harness.

use serde::Serialize;
use serde_json::Value;

use super::config::ProbeConfig;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ProbeStatus {
    /// Every checked prediction held.
    Confirmed,
    /// At least one prediction failed; details say where.
    Violation,
    /// The probe could not run to completion.
    Error,
}

/// Outcome of one suite: a status, the number of failed predictions, and a
/// suite-specific details payload.
#[derive(Clone, Debug, Serialize)]
pub struct ProbeReport {
    pub name: String,
    pub status: ProbeStatus,
    pub violations: usize,
    pub details: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Clone, Copy, Debug, Default, Serialize)]
pub struct Summary {
    pub confirmed: usize,
    pub violations: usize,
    pub errors: usize,
}

/// The versioned top-level report. Identical config and seed reproduce
/// this document byte for byte (there is deliberately no timestamp).
#[derive(Clone, Debug, Serialize)]
pub struct ReportDocument {
    pub schema_version: u32,
    pub tool_version: String,
    /// Algorithm identifier of the single random stream all suites draw from.
    pub rng: String,
    pub config: ProbeConfig,
    pub probes: Vec<ProbeReport>,
    pub summary: Summary,
}

impl ReportDocument {
    pub fn new(config: ProbeConfig, probes: Vec<ProbeReport>) -> ReportDocument {
        let mut summary = Summary::default();
        for p in &probes {
            match p.status {
                ProbeStatus::Confirmed => summary.confirmed += 1,
                ProbeStatus::Violation => summary.violations += p.violations.max(1),
                ProbeStatus::Error => summary.errors += 1,
            }
        }
        ReportDocument {
            schema_version: 1,
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            rng: "chacha12".to_string(),
            config,
            probes,
            summary,
        }
    }

    /// Exit-code contract: success iff no violations and no errors.
    pub fn is_clean(&self) -> bool {
        self.summary.violations == 0 && self.summary.errors == 0
    }
}
