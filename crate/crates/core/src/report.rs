//! Structured pass/fail records shared by every verification suite.

use serde::{Deserialize, Serialize};
use serde_json::Value;
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
        })
    }
}

/// One named check. Failures carry a witness locating the problem.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub expected: Value,
    pub actual: Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl Check {
    /// Passes iff `expected == actual`.
    pub fn equal<T: Serialize + PartialEq>(name: impl Into<String>, expected: T, actual: T) -> Self {
        let status = if expected == actual { Status::Pass } else { Status::Fail };
        Check {
            name: name.into(),
            status,
            expected: serde_json::to_value(expected).expect("serializable"),
            actual: serde_json::to_value(actual).expect("serializable"),
            witness: None,
        }
    }

    /// A boolean check; `witness` is kept only on failure.
    pub fn holds(name: impl Into<String>, ok: bool, witness: Option<String>) -> Self {
        Check {
            name: name.into(),
            status: if ok { Status::Pass } else { Status::Fail },
            expected: Value::Bool(true),
            actual: Value::Bool(ok),
            witness: if ok { None } else { witness },
        }
    }

    pub fn skipped(name: impl Into<String>, reason: impl Into<String>) -> Self {
        Check {
            name: name.into(),
            status: Status::Skipped,
            expected: Value::Null,
            actual: Value::Null,
            witness: Some(reason.into()),
        }
    }

    pub fn with_witness(mut self, w: impl Into<String>) -> Self {
        if self.status == Status::Fail {
            self.witness = Some(w.into());
        }
        self
    }

    pub fn passed(&self) -> bool {
        self.status != Status::Fail
    }
}

/// Report for one suite at one parameter point.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub m: usize,
    pub n: usize,
    pub mode: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub evaluation: Option<EvaluationInfo>,
    #[serde(default, skip_serializing_if = "serde_json::Map::is_empty")]
    pub params: serde_json::Map<String, Value>,
    pub checks: Vec<Check>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub runtime_ms: Option<u64>,
}

/// The prime-field point used, if any.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EvaluationInfo {
    pub p: u64,
    pub c: u64,
    pub attempt: u32,
}

impl VerificationReport {
    pub fn new(m: usize, n: usize, mode: impl Into<String>) -> Self {
        VerificationReport {
            m,
            n,
            mode: mode.into(),
            evaluation: None,
            params: serde_json::Map::new(),
            checks: Vec::new(),
            runtime_ms: None,
        }
    }

    pub fn param(mut self, key: &str, v: impl Serialize) -> Self {
        self.params.insert(key.to_string(), serde_json::to_value(v).expect("serializable"));
        self
    }

    pub fn push(&mut self, c: Check) {
        self.checks.push(c);
    }

    pub fn extend(&mut self, cs: impl IntoIterator<Item = Check>) {
        self.checks.extend(cs);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(Check::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail)
    }

    /// The first check with the given name.
    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// One line per check: `status name expected actual [witness]`.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for c in &self.checks {
            s.push_str(&format!(
                "{:<7} {} expected={} actual={}",
                c.status.to_string().to_uppercase(),
                c.name,
                c.expected,
                c.actual
            ));
            if let Some(w) = &c.witness {
                s.push_str(&format!(" witness={w}"));
            }
            s.push('\n');
        }
        s
    }
}
