//! Verification report: per-check results, engine metadata, deterministic
//! text and JSON renderings.

use crate::verifier::MultiplierSupport;
use serde::{Deserialize, Serialize};
use std::time::Duration;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    Error,
}

#[derive(Debug, Clone)]
pub struct CheckResult {
    pub name: String,
    pub label: String,
    pub status: CheckStatus,
    pub needed_ideal: bool,
    pub detail: Option<String>,
    pub elapsed: Duration,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EngineMeta {
    pub generator_order: Vec<String>,
    pub curvature_generators: Vec<String>,
    pub form_degree_cap: u8,
    pub parameter_degree_cap: u8,
    pub multiplier_support: MultiplierSupport,
    pub ideal_generator_count: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub error: usize,
}

#[derive(Debug, Clone)]
pub struct Report {
    pub engine: EngineMeta,
    pub checks: Vec<CheckResult>,
    pub summary: Summary,
    /// Intentional, documented mismatches surfaced by the engine.
    pub discrepancies: Vec<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CheckResultJson {
    pub name: String,
    pub label: String,
    pub status: CheckStatus,
    pub needed_ideal: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ReportJson {
    pub engine: EngineMeta,
    pub checks: Vec<CheckResultJson>,
    pub summary: Summary,
    pub discrepancies: Vec<String>,
}

impl Report {
    pub fn all_pass(&self) -> bool {
        self.summary.fail == 0 && self.summary.error == 0
    }

    pub fn has_errors(&self) -> bool {
        self.summary.error > 0
    }

    /// JSON view; timings are included only on request so that default
    /// output is byte-identical across runs.
    pub fn to_json(&self, timings: bool) -> ReportJson {
        ReportJson {
            engine: self.engine.clone(),
            checks: self
                .checks
                .iter()
                .map(|c| CheckResultJson {
                    name: c.name.clone(),
                    label: c.label.clone(),
                    status: c.status,
                    needed_ideal: c.needed_ideal,
                    elapsed_ms: timings.then(|| c.elapsed.as_millis() as u64),
                    detail: c.detail.clone(),
                })
                .collect(),
            summary: self.summary,
            discrepancies: self.discrepancies.clone(),
        }
    }

    pub fn to_json_string(&self, timings: bool) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json(timings)).expect("serializable");
        s.push('\n');
        s
    }

    pub fn to_text(&self, timings: bool) -> String {
        let mut out = String::new();
        out.push_str("hetg2 verification report\n");
        out.push_str(&format!(
            "generators: {} | curvature blocks: {}\n",
            self.engine.generator_order.join(" "),
            self.engine.curvature_generators.join(" ")
        ));
        out.push_str(&format!(
            "form degree cap: {} | parameter degree cap: {} | ideal generators: {} | multiplier support: {:?}\n\n",
            self.engine.form_degree_cap,
            self.engine.parameter_degree_cap,
            self.engine.ideal_generator_count,
            self.engine.multiplier_support,
        ));
        let name_width = self.checks.iter().map(|c| c.name.len()).max().unwrap_or(4);
        let label_width = self.checks.iter().map(|c| c.label.len()).max().unwrap_or(5);
        for c in &self.checks {
            let status = match c.status {
                CheckStatus::Pass => "pass ",
                CheckStatus::Fail => "FAIL ",
                CheckStatus::Error => "ERROR",
            };
            let ideal = if c.needed_ideal { "ideal:yes" } else { "ideal:no " };
            out.push_str(&format!(
                "{:name_width$}  {:label_width$}  {}  {}",
                c.name, c.label, status, ideal
            ));
            if timings {
                out.push_str(&format!("  {}ms", c.elapsed.as_millis()));
            }
            out.push('\n');
            if let Some(detail) = &c.detail {
                for line in detail.lines() {
                    out.push_str(&format!("{:name_width$}    | {}\n", "", line));
                }
            }
        }
        out.push_str(&format!(
            "\nsummary: {} pass, {} fail, {} error\n",
            self.summary.pass, self.summary.fail, self.summary.error
        ));
        if !self.discrepancies.is_empty() {
            out.push_str("discrepancies:\n");
            for d in &self.discrepancies {
                out.push_str(&format!("  - {}\n", d));
            }
        }
        out
    }
}
