//! The JSON report, schema version 1.

use serde::{Deserialize, Serialize};
use shaperec::semantics::Stats;
use shaperec::{Sign, ValidationResult};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReportDocument {
    pub schema: u32,
    pub mode: String,
    pub valid: bool,
    pub violations: Vec<ViolationEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<WitnessEntry>>,
    pub stats: StatsEntry,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ViolationEntry {
    pub focus: String,
    pub shape: String,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessEntry {
    pub node: String,
    pub shape: String,
    /// `"+"` or `"-"`
    pub sign: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct StatsEntry {
    pub nodes: usize,
    pub shapes: usize,
    pub guessable_pairs: usize,
    pub assignments_tried: u64,
    /// Milliseconds, rounded to microseconds.
    pub elapsed_ms: f64,
    pub oracle: bool,
}

impl From<&Stats> for StatsEntry {
    fn from(s: &Stats) -> Self {
        StatsEntry {
            nodes: s.nodes,
            shapes: s.shapes,
            guessable_pairs: s.guessable_pairs,
            assignments_tried: s.assignments_tried,
            elapsed_ms: s.elapsed.as_micros() as f64 / 1000.0,
            oracle: s.oracle,
        }
    }
}

pub fn sign_mark(sign: Sign) -> &'static str {
    match sign {
        Sign::Pos => "+",
        Sign::Neg => "-",
    }
}

impl From<&ValidationResult> for ReportDocument {
    fn from(r: &ValidationResult) -> Self {
        ReportDocument {
            schema: SCHEMA_VERSION,
            mode: r.mode.as_str().to_string(),
            valid: r.valid,
            violations: r
                .violations
                .iter()
                .map(|v| ViolationEntry {
                    focus: v.focus.to_string(),
                    shape: v.shape.to_string(),
                    detail: v.detail.clone(),
                })
                .collect(),
            witness: r.witness.as_ref().map(|w| {
                w.iter()
                    .map(|(n, s, sign)| WitnessEntry {
                        node: n.to_string(),
                        shape: s.to_string(),
                        sign: sign_mark(sign).to_string(),
                    })
                    .collect()
            }),
            stats: StatsEntry::from(&r.stats),
        }
    }
}

impl ReportDocument {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "mode: {}\nvalid: {}\nviolations: {}\n",
            self.mode,
            self.valid,
            self.violations.len()
        );
        for v in &self.violations {
            out.push_str(&format!("  {} {}: {}\n", v.focus, v.shape, v.detail));
        }
        if let Some(w) = &self.witness {
            out.push_str(&format!("witness: {} signed pairs\n", w.len()));
            for e in w {
                out.push_str(&format!("  {} {} {}\n", e.sign, e.node, e.shape));
            }
        }
        let s = &self.stats;
        out.push_str(&format!(
            "stats: nodes={} shapes={} guessablePairs={} assignmentsTried={} elapsedMs={} oracle={}\n",
            s.nodes, s.shapes, s.guessable_pairs, s.assignments_tried, s.elapsed_ms, s.oracle
        ));
        out
    }
}
