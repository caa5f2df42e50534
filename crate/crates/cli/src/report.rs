use serde::Serialize;
use serde_json::Value;
use sha2::{Digest, Sha256};
use weddle_core::solve::SolverConfig;

/// Result of one command. Identical inputs and seed give identical
/// reports apart from `timing_ms`.
#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    /// SHA-256 of the canonical input text.
    pub input_digest: String,
    pub seed: u64,
    pub config: SolverConfig,
    pub outputs: Value,
    pub certified: bool,
    pub timing_ms: f64,
    /// Human-readable lines for text output.
    #[serde(skip)]
    pub summary: Vec<String>,
}

impl RunReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// The JSON report with the timing field removed.
    pub fn deterministic_json(&self) -> String {
        let mut v = serde_json::to_value(self).expect("report serializes");
        if let Value::Object(m) = &mut v {
            m.remove("timing_ms");
        }
        serde_json::to_string_pretty(&v).expect("value serializes")
    }
}

pub fn digest(text: &str) -> String {
    Sha256::digest(text.as_bytes())
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

pub fn render_text(r: &RunReport) -> String {
    let mut out = String::new();
    for line in &r.summary {
        out.push_str(line);
        out.push('\n');
    }
    out.push_str(if r.certified { "certified: yes\n" } else { "certified: no\n" });
    out
}
