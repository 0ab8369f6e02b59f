//! The machine-readable report emitted by every verification command.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
    pub elapsed_ms: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub params: serde_json::Value,
    pub checks: Vec<Check>,
    /// Conjunction of the individual check results.
    pub pass: bool,
    pub version: String,
}

impl Report {
    pub fn new(command: impl Into<String>, params: serde_json::Value) -> Report {
        Report {
            command: command.into(),
            params,
            checks: Vec::new(),
            pass: true,
            version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }

    pub fn push(&mut self, name: impl Into<String>, pass: bool, detail: impl Into<String>, elapsed_ms: u64) {
        self.pass &= pass;
        self.checks.push(Check { name: name.into(), pass, detail: detail.into(), elapsed_ms });
    }

    /// Run a closure as a named check, timing it.
    pub fn check(&mut self, name: impl Into<String>, f: impl FnOnce() -> (bool, String)) {
        let start = std::time::Instant::now();
        let (pass, detail) = f();
        self.push(name, pass, detail, start.elapsed().as_millis() as u64);
    }

    /// Aligned text rendering derived from the same data as the JSON form.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("{} v{}\n", self.command, self.version));
        let width = self
            .checks
            .iter()
            .map(|c| c.name.len())
            .max()
            .unwrap_or(0);
        for c in &self.checks {
            let status = if c.pass { "pass" } else { "FAIL" };
            out.push_str(&format!("  {:width$}  {status}  {}\n", c.name, c.detail));
        }
        out.push_str(&format!(
            "{}: {}\n",
            if self.pass { "ok" } else { "failed" },
            self.checks.len()
        ));
        out
    }
}
