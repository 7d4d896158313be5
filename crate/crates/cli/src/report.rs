use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;

use crate::{Format, RunConfig};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub expected: Value,
    pub actual: Value,
    pub pass: bool,
}

impl Check {
    pub fn equal<T: Serialize + PartialEq>(name: &str, expected: T, actual: T) -> Check {
        let pass = expected == actual;
        Check { name: name.into(), expected: json(&expected), actual: json(&actual), pass }
    }

    pub fn holds(name: &str, ok: bool, detail: Value) -> Check {
        Check { name: name.into(), expected: Value::Bool(true), actual: detail, pass: ok }
    }
}

fn json<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).unwrap_or(Value::Null)
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub schema: u32,
    pub tool: &'static str,
    pub version: &'static str,
    pub config: RunConfig,
    pub checks: Vec<Check>,
    /// Seconds per stage.
    pub timings: BTreeMap<String, f64>,
    /// Extra results that are not pass/fail.
    pub data: BTreeMap<String, Value>,
    pub pass: bool,
    /// Set when the run stopped early.
    pub aborted: Option<String>,
}

impl Report {
    pub fn new(config: RunConfig) -> Self {
        Report {
            schema: SCHEMA_VERSION,
            tool: "galcov",
            version: env!("CARGO_PKG_VERSION"),
            config,
            checks: Vec::new(),
            timings: BTreeMap::new(),
            data: BTreeMap::new(),
            pass: true,
            aborted: None,
        }
    }

    pub fn push(&mut self, c: Check) {
        if !c.pass {
            log::warn!("check {} failed", c.name);
        }
        self.pass &= c.pass;
        self.checks.push(c);
    }

    pub fn failed(&self) -> Vec<&str> {
        self.checks.iter().filter(|c| !c.pass).map(|c| c.name.as_str()).collect()
    }

    /// 0 when every check passes, 2 when the run was aborted on a budget,
    /// 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.aborted.is_some() {
            2
        } else if self.pass {
            0
        } else {
            1
        }
    }
}

pub fn emit_report(r: &Report, format: Format) -> Vec<u8> {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(r).expect("report serializes");
            s.push('\n');
            s.into_bytes()
        }
        Format::Text => {
            let mut s = String::new();
            let c = &r.config;
            let _ = writeln!(
                s,
                "galcov {} verify n={} mod={} depth={} window={}",
                r.version, c.n, c.modulus, c.depth, c.window
            );
            for ch in &r.checks {
                let _ = writeln!(
                    s,
                    "  [{}] {}: expected {}, got {}",
                    if ch.pass { "ok" } else { "FAIL" },
                    ch.name,
                    ch.expected,
                    ch.actual
                );
            }
            for (k, v) in &r.timings {
                let _ = writeln!(s, "  time {k}: {v:.3}s");
            }
            if let Some(why) = &r.aborted {
                let _ = writeln!(s, "aborted: {why}");
            }
            let failed = r.failed();
            if failed.is_empty() {
                let _ = writeln!(s, "PASS");
            } else {
                let _ = writeln!(s, "FAIL: {}", failed.join(", "));
            }
            s.into_bytes()
        }
    }
}
