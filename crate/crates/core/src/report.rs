//! Structured run reports with deterministic machine output and a stable
//! exit-code contract: 0 for pass, 1 for a mathematical failure with a
//! witness, 2 for malformed input, 3 for an exceeded search budget.

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Error,
    Inconclusive,
}

impl Verdict {
    pub fn exit_code(&self) -> i32 {
        match self {
            Verdict::Pass => 0,
            Verdict::Fail => 1,
            Verdict::Error => 2,
            Verdict::Inconclusive => 3,
        }
    }
}

/// One run's outcome. `claim` names the mathematical statement the command
/// checked; `details` carries every witness needed to re-verify the verdict
/// independently.
#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: String,
    pub verdict: Verdict,
    pub exit_code: i32,
    pub claim: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub details: serde_json::Value,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

impl Report {
    pub fn new(command: &str, verdict: Verdict, claim: &'static str) -> Self {
        Report {
            command: command.to_string(),
            verdict,
            exit_code: verdict.exit_code(),
            claim,
            seed: None,
            details: serde_json::Value::Null,
            warnings: Vec::new(),
        }
    }

    pub fn with_details(mut self, details: serde_json::Value) -> Self {
        self.details = details;
        self
    }

    pub fn with_seed(mut self, seed: Option<u64>) -> Self {
        self.seed = seed;
        self
    }

    pub fn with_warnings(mut self, warnings: Vec<String>) -> Self {
        self.warnings = warnings;
        self
    }

    /// Single-object machine output; byte-identical across runs for the same
    /// input and seed.
    pub fn machine(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "{}: {}\n",
            self.command,
            match self.verdict {
                Verdict::Pass => "pass",
                Verdict::Fail => "FAIL",
                Verdict::Error => "error",
                Verdict::Inconclusive => "inconclusive (budget exceeded)",
            }
        ));
        out.push_str(&format!("checked: {}\n", self.claim));
        for w in &self.warnings {
            out.push_str(&format!("warning: {w}\n"));
        }
        if !self.details.is_null() {
            out.push_str(&render_value(&self.details, 0));
        }
        out
    }
}

fn render_value(v: &serde_json::Value, indent: usize) -> String {
    let pad = "  ".repeat(indent);
    match v {
        serde_json::Value::Object(map) => {
            let mut out = String::new();
            for (k, val) in map {
                match val {
                    serde_json::Value::Object(_) | serde_json::Value::Array(_) => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        out.push_str(&render_value(val, indent + 1));
                    }
                    _ => out.push_str(&format!("{pad}{k}: {val}\n")),
                }
            }
            out
        }
        serde_json::Value::Array(items) => {
            let mut out = String::new();
            for item in items {
                match item {
                    serde_json::Value::Object(_) | serde_json::Value::Array(_) => {
                        out.push_str(&format!("{pad}-\n"));
                        out.push_str(&render_value(item, indent + 1));
                    }
                    _ => out.push_str(&format!("{pad}- {item}\n")),
                }
            }
            out
        }
        other => format!("{pad}{other}\n"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn machine_output_is_deterministic() {
        let make = || {
            Report::new("demo", Verdict::Pass, "nothing")
                .with_details(serde_json::json!({"a": 1, "b": [2, 3]}))
                .with_seed(Some(9))
        };
        assert_eq!(make().machine(), make().machine());
        assert_eq!(make().exit_code, 0);
    }

    #[test]
    fn exit_codes() {
        assert_eq!(Verdict::Pass.exit_code(), 0);
        assert_eq!(Verdict::Fail.exit_code(), 1);
        assert_eq!(Verdict::Error.exit_code(), 2);
        assert_eq!(Verdict::Inconclusive.exit_code(), 3);
    }
}
