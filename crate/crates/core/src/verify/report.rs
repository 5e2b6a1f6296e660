use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skipped => "skipped",
        })
    }
}

/// Outcome of one check. A failure always carries a counterexample (or, for
/// a search that came up empty, the exhausted search bounds).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub id: String,
    pub group: String,
    pub status: Status,
    pub params: BTreeMap<String, Value>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub counterexample: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub detail: Option<String>,
}

impl CheckResult {
    pub fn pass(group: &str, id: impl Into<String>) -> Self {
        CheckResult {
            id: id.into(),
            group: group.to_string(),
            status: Status::Pass,
            params: BTreeMap::new(),
            counterexample: None,
            detail: None,
        }
    }

    pub fn fail(group: &str, id: impl Into<String>, counterexample: Value) -> Self {
        CheckResult {
            status: Status::Fail,
            counterexample: Some(counterexample),
            ..CheckResult::pass(group, id)
        }
    }

    pub fn skipped(group: &str, id: impl Into<String>, reason: impl Into<String>) -> Self {
        CheckResult {
            status: Status::Skipped,
            detail: Some(reason.into()),
            ..CheckResult::pass(group, id)
        }
    }

    /// `pass` when `counterexample` is `None`, otherwise `fail` with it.
    pub fn from_outcome(group: &str, id: impl Into<String>, counterexample: Option<Value>) -> Self {
        match counterexample {
            None => CheckResult::pass(group, id),
            Some(c) => CheckResult::fail(group, id, c),
        }
    }

    pub fn param(mut self, key: &str, value: impl Serialize) -> Self {
        self.params
            .insert(key.to_string(), serde_json::to_value(value).expect("parameter serializes"));
        self
    }

    pub fn detail(mut self, text: impl Into<String>) -> Self {
        self.detail = Some(text.into());
        self
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub command: String,
    pub version: String,
    pub checks: Vec<CheckResult>,
    /// Wall-clock milliseconds; not part of the deterministic content.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub elapsed_ms: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Csv,
}

impl std::str::FromStr for ReportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(ReportFormat::Json),
            "csv" => Ok(ReportFormat::Csv),
            _ => Err(Error::Unknown {
                kind: "report format",
                name: s.to_string(),
            }),
        }
    }
}

impl RunReport {
    pub fn new(command: &str, checks: Vec<CheckResult>) -> Self {
        RunReport {
            command: command.to_string(),
            version: crate::VERSION.to_string(),
            checks,
            elapsed_ms: None,
        }
    }

    pub fn merge(command: &str, parts: Vec<RunReport>) -> Self {
        RunReport::new(command, parts.into_iter().flat_map(|r| r.checks).collect())
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn count(&self, status: Status) -> usize {
        self.checks.iter().filter(|c| c.status == status).count()
    }

    pub fn without_timing(&self) -> RunReport {
        RunReport {
            elapsed_ms: None,
            ..self.clone()
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// One row per check: `id,group,status,params,counterexample,detail`,
    /// with the structured columns as compact JSON.
    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let io = |e: csv::Error| Error::Invariant(format!("csv encoding: {e}"));
        w.write_record(["id", "group", "status", "params", "counterexample", "detail"])
            .map_err(io)?;
        for c in &self.checks {
            let params = serde_json::to_string(&c.params)?;
            let ce = c.counterexample.as_ref().map(|v| v.to_string()).unwrap_or_default();
            let status = c.status.to_string();
            let detail = c.detail.clone().unwrap_or_default();
            w.write_record([c.id.as_str(), &c.group, &status, &params, &ce, &detail])
                .map_err(io)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Invariant(format!("csv encoding: {e}")))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }

    pub fn render(&self, format: ReportFormat) -> Result<String> {
        match format {
            ReportFormat::Json => Ok(self.to_json()),
            ReportFormat::Csv => self.to_csv(),
        }
    }

    /// Writes atomically: temporary file in the target directory, then rename.
    pub fn write(&self, format: ReportFormat, path: &Path) -> Result<()> {
        let text = self.render(format)?;
        let dir = match path.parent() {
            Some(d) if !d.as_os_str().is_empty() => d,
            _ => Path::new("."),
        };
        let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| Error::io(dir, e))?;
        tmp.write_all(text.as_bytes()).map_err(|e| Error::io(path, e))?;
        tmp.persist(path).map_err(|e| Error::io(path, e.error))?;
        Ok(())
    }

    pub fn read_json(path: &Path) -> Result<RunReport> {
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Ok(serde_json::from_str(&text)?)
    }
}
