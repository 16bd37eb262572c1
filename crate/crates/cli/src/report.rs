use std::time::{SystemTime, UNIX_EPOCH};

use ratideal::rational::Status;
use ratideal::Error;
use serde::Serialize;
use serde_json::Value;

use crate::config::RunConfig;

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct ErrorInfo {
    pub kind: String,
    pub message: String,
}

impl From<&Error> for ErrorInfo {
    fn from(e: &Error) -> Self {
        ErrorInfo {
            kind: e.kind().to_string(),
            message: e.to_string(),
        }
    }
}

#[derive(Clone, Copy, Debug, Serialize, PartialEq, Eq)]
pub enum Verdict {
    ExactPass,
    Pass,
    Fail,
}

impl From<&Status> for Verdict {
    fn from(s: &Status) -> Self {
        match s {
            Status::ExactPass => Verdict::ExactPass,
            Status::Pass { .. } => Verdict::Pass,
            Status::Fail => Verdict::Fail,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Case {
    pub index: usize,
    pub label: String,
    pub resamples: u32,
    pub input: Value,
    /// Inputs re-checked against their invariants when the report is built.
    pub input_valid: bool,
    pub status: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub report: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorInfo>,
    #[serde(skip)]
    pub failure: Option<Error>,
}

impl Case {
    pub fn new(index: usize, label: impl Into<String>, input: Value) -> Self {
        Case {
            index,
            label: label.into(),
            resamples: 0,
            input,
            input_valid: true,
            status: Verdict::Fail,
            report: None,
            error: None,
            failure: None,
        }
    }

    pub fn with_report(mut self, verdict: Verdict, report: Value) -> Self {
        self.status = if self.input_valid { verdict } else { Verdict::Fail };
        self.report = Some(report);
        self
    }

    pub fn with_error(mut self, e: Error) -> Self {
        self.status = Verdict::Fail;
        self.error = Some(ErrorInfo::from(&e));
        self.failure = Some(e);
        self
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ReportEnvelope {
    pub version: &'static str,
    pub command: String,
    pub config: Option<RunConfig>,
    pub cases: Vec<Case>,
    pub status: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<ErrorInfo>,
    pub timestamp: String,
}

fn timestamp() -> String {
    let secs = SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_secs()).unwrap_or(0);
    secs.to_string()
}

fn aggregate(cases: &[Case]) -> Verdict {
    if cases.iter().any(|c| c.status == Verdict::Fail) || cases.is_empty() {
        Verdict::Fail
    } else if cases.iter().all(|c| c.status == Verdict::ExactPass) {
        Verdict::ExactPass
    } else {
        Verdict::Pass
    }
}

/// Exit code for an error: 3 numerical, 1 verification, 2 everything else.
pub fn error_exit_code(e: &Error) -> i32 {
    if e.is_numerical() {
        3
    } else if matches!(e, Error::ResidueMismatch { .. } | Error::WindowNotClosed(_)) {
        1
    } else {
        2
    }
}

impl ReportEnvelope {
    pub fn from_cases(config: RunConfig, cases: Vec<Case>) -> Self {
        ReportEnvelope {
            version: env!("CARGO_PKG_VERSION"),
            command: config.command.clone(),
            status: aggregate(&cases),
            config: Some(config),
            cases,
            error: None,
            timestamp: timestamp(),
        }
    }

    pub fn from_error(command: &str, config: Option<RunConfig>, e: &Error) -> Self {
        ReportEnvelope {
            version: env!("CARGO_PKG_VERSION"),
            command: command.to_string(),
            config,
            cases: Vec::new(),
            status: Verdict::Fail,
            error: Some(ErrorInfo::from(e)),
            timestamp: timestamp(),
        }
    }

    /// 0 pass, 1 verification failure, 2 usage or domain error, 3 numerical failure.
    pub fn exit_code(&self) -> i32 {
        if self.error.is_some() {
            return 2;
        }
        let worst = self
            .cases
            .iter()
            .filter_map(|c| c.failure.as_ref().map(error_exit_code))
            .fold(0, |acc, code| match (acc, code) {
                (3, _) | (_, 3) => 3,
                (2, _) | (_, 2) => 2,
                _ => acc.max(code),
            });
        match (worst, self.status) {
            (0, Verdict::Fail) => 1,
            (code, _) => code,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn summary(&self) -> String {
        let mut out = String::new();
        for c in &self.cases {
            let detail = c.error.as_ref().map(|e| format!(" ({}: {})", e.kind, e.message)).unwrap_or_default();
            out.push_str(&format!("case {:>3} {:<12} {:?}{detail}\n", c.index, c.label, c.status));
        }
        if let Some(e) = &self.error {
            out.push_str(&format!("error {}: {}\n", e.kind, e.message));
        }
        out.push_str(&format!("{}: {:?}\n", self.command, self.status));
        out
    }
}

/// The JSON text with the timestamp removed, for reproducibility checks.
pub fn without_timestamp(json: &str) -> String {
    let mut v: Value = serde_json::from_str(json).expect("valid report JSON");
    if let Some(obj) = v.as_object_mut() {
        obj.remove("timestamp");
    }
    serde_json::to_string_pretty(&v).expect("reports serialize")
}
