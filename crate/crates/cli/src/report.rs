use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::ValueEnum;
use serde_json::{json, Value};

use flatfold_core::io::{to_json, SCHEMA_VERSION};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Text,
}

/// Why a command failed. Semantic failures exit 1, everything else 2.
#[derive(Debug)]
pub enum Failure {
    Semantic(String),
    Input(String),
}

impl Failure {
    pub fn code(&self) -> u8 {
        match self {
            Failure::Semantic(_) => 1,
            Failure::Input(_) => 2,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            Failure::Semantic(m) | Failure::Input(m) => m,
        }
    }
}

pub struct Check {
    pub name: &'static str,
    pub pass: bool,
    /// One entry per problem, e.g. `vertex 3`.
    pub details: Vec<String>,
}

/// A command's verdict: named checks plus free-form data.
pub struct Report {
    pub command: &'static str,
    pub checks: Vec<Check>,
    pub data: serde_json::Map<String, Value>,
}

impl Report {
    pub fn new(command: &'static str) -> Self {
        Report {
            command,
            checks: vec![],
            data: Default::default(),
        }
    }

    pub fn check(&mut self, name: &'static str, details: Vec<String>) {
        self.checks.push(Check {
            name,
            pass: details.is_empty(),
            details,
        });
    }

    pub fn set(&mut self, key: &str, v: impl serde::Serialize) {
        let v = serde_json::to_value(v).expect("report data serializes");
        self.data.insert(key.into(), v);
    }

    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    /// `name: detail` lines for every failed check.
    pub fn diagnostics(&self) -> Vec<String> {
        self.checks
            .iter()
            .flat_map(|c| c.details.iter().map(move |d| format!("{}: {d}", c.name)))
            .collect()
    }

    pub fn to_value(&self) -> Value {
        let checks: Vec<Value> = self
            .checks
            .iter()
            .map(|c| json!({"name": c.name, "pass": c.pass, "details": c.details}))
            .collect();
        json!({
            "version": SCHEMA_VERSION,
            "type": "report",
            "command": self.command,
            "pass": self.pass(),
            "checks": checks,
            "data": self.data,
        })
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => to_json(&self.to_value()),
            Format::Text => {
                let mut s = String::new();
                for c in &self.checks {
                    if c.pass {
                        let _ = writeln!(s, "{}: pass", c.name);
                    } else {
                        let _ = writeln!(s, "{}: FAIL {}", c.name, c.details.join("; "));
                    }
                }
                for (k, v) in &self.data {
                    let v = match v {
                        Value::String(x) => x.clone(),
                        other => other.to_string(),
                    };
                    let _ = writeln!(s, "{k}: {v}");
                }
                let _ = writeln!(s, "result: {}", if self.pass() { "pass" } else { "fail" });
                s
            }
        }
    }
}

pub fn read_input(path: &Path) -> Result<String, Failure> {
    if path == Path::new("-") {
        let mut s = String::new();
        std::io::Read::read_to_string(&mut std::io::stdin(), &mut s)
            .map_err(|e| Failure::Input(format!("stdin: {e}")))?;
        return Ok(s);
    }
    std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

/// Files written into an output directory, or nothing when no directory
/// was given.
pub struct OutDir(pub Option<PathBuf>);

impl OutDir {
    pub fn write(&self, name: &str, text: &str) -> Result<(), Failure> {
        let Some(dir) = &self.0 else {
            return Ok(());
        };
        std::fs::create_dir_all(dir).map_err(|e| Failure::Input(format!("{}: {e}", dir.display())))?;
        let path = dir.join(name);
        std::fs::write(&path, text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
    }
}
