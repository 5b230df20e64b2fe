use std::io::{self, Write};

use serde::Serialize;
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Info,
}

/// One line of output; in JSON mode the record itself, otherwise `text`.
#[derive(Clone, Debug, Serialize)]
pub struct ReportRecord {
    pub subject: String,
    pub verdict: Verdict,
    pub witness: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub repro: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
    #[serde(skip)]
    pub text: String,
}

impl ReportRecord {
    pub fn info(subject: impl Into<String>, witness: Value, text: impl Into<String>) -> Self {
        Self {
            subject: subject.into(),
            verdict: Verdict::Info,
            witness,
            repro: None,
            elapsed_ms: None,
            text: text.into(),
        }
    }

    pub fn verdict(subject: impl Into<String>, pass: bool, witness: Value, text: impl Into<String>) -> Self {
        let verdict = if pass { Verdict::Pass } else { Verdict::Fail };
        Self { subject: subject.into(), verdict, witness, repro: None, elapsed_ms: None, text: text.into() }
    }

    pub fn failed(&self) -> bool {
        self.verdict == Verdict::Fail
    }
}

pub fn render(records: &[ReportRecord], json: bool) -> String {
    let mut out = String::new();
    for r in records {
        if json {
            out.push_str(&serde_json::to_string(r).expect("records serialize"));
        } else {
            out.push_str(&r.text);
        }
        out.push('\n');
    }
    out
}

pub fn emit(records: &[ReportRecord], json: bool) -> io::Result<()> {
    let mut stdout = io::stdout().lock();
    stdout.write_all(render(records, json).as_bytes())?;
    stdout.flush()
}
