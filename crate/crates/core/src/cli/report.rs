//! Verification reports and their text/JSON renderings.

use serde::Serialize;

use super::config::SuiteConfig;

pub const SCHEMA: &str = "hamrep/1";

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_dev: Option<f64>,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

impl Check {
    pub fn exact(name: impl Into<String>, pass: bool, detail: impl Into<String>) -> Self {
        Check { name: name.into(), pass, max_dev: None, detail: detail.into() }
    }

    pub fn within(name: impl Into<String>, dev: f64, tol: f64) -> Self {
        Check { name: name.into(), pass: dev <= tol, max_dev: Some(dev), detail: String::new() }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = detail.into();
        self
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub pass: bool,
    pub checks: Vec<Check>,
    pub notes: Vec<String>,
}

impl SuiteReport {
    pub fn new(suite: &str, checks: Vec<Check>, notes: Vec<String>) -> Self {
        let pass = !checks.is_empty() && checks.iter().all(|c| c.pass);
        SuiteReport { suite: suite.to_string(), pass, checks, notes }
    }

    pub fn failed(&self) -> usize {
        self.checks.iter().filter(|c| !c.pass).count()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub schema: &'static str,
    pub config: SuiteConfig,
    pub pass: bool,
    pub suites: Vec<SuiteReport>,
}

impl Report {
    pub fn new(config: SuiteConfig, suites: Vec<SuiteReport>) -> Self {
        let pass = suites.iter().all(|s| s.pass);
        Report { schema: SCHEMA, config, pass, suites }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for s in &self.suites {
            let verdict = if s.pass { "PASS" } else { "FAIL" };
            out.push_str(&format!("[{verdict}] {} ({}/{} checks)\n", s.suite, s.checks.len() - s.failed(), s.checks.len()));
            for c in &s.checks {
                let mark = if c.pass { "ok  " } else { "FAIL" };
                let dev = c.max_dev.map(|d| format!(" max_dev={d:.3e}")).unwrap_or_default();
                let detail = if c.detail.is_empty() { String::new() } else { format!(" ({})", c.detail) };
                out.push_str(&format!("  {mark} {}{dev}{detail}\n", c.name));
            }
            for n in &s.notes {
                out.push_str(&format!("  note: {n}\n"));
            }
        }
        out.push_str(if self.pass { "overall: PASS\n" } else { "overall: FAIL\n" });
        out
    }
}
