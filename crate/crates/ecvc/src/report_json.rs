//! JSON and text renderings of verification reports.

use ecvc_core::{CheckOutcome, FanoCase, VerificationReport};
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::case_file::case_to_json;

#[derive(Serialize)]
pub struct CheckJson<'a> {
    pub label: &'a str,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<&'a str>,
}

impl<'a> From<&'a CheckOutcome> for CheckJson<'a> {
    fn from(o: &'a CheckOutcome) -> Self {
        CheckJson {
            label: &o.label,
            passed: o.passed,
            witness: o.witness.as_deref(),
        }
    }
}

#[derive(Serialize)]
pub struct ReportJson<'a> {
    pub case: &'a str,
    pub checks: Vec<CheckJson<'a>>,
    pub overall: bool,
    pub input_hash: String,
}

/// SHA-256 of the canonical case export, hex encoded.
pub fn input_hash(case: &FanoCase) -> String {
    hex::encode(Sha256::digest(case_to_json(case).as_bytes()))
}

pub fn report_json<'a>(report: &'a VerificationReport, case: &FanoCase) -> ReportJson<'a> {
    ReportJson {
        case: &report.case,
        checks: report.checks.iter().map(CheckJson::from).collect(),
        overall: report.overall(),
        input_hash: input_hash(case),
    }
}

/// One summary line, followed by an indented line per failure.
pub fn report_text(report: &VerificationReport) -> String {
    let groups = report.groups().len();
    let total = report.checks.len();
    if report.overall() {
        return format!("PASS {} ({total} checks in {groups} groups)\n", report.case);
    }
    let failures: Vec<_> = report.failures().collect();
    let mut s = format!(
        "FAIL {} ({} of {total} checks failed)\n",
        report.case,
        failures.len()
    );
    for f in failures {
        s.push_str(&format!(
            "  {}: {}\n",
            f.label,
            f.witness.as_deref().unwrap_or("")
        ));
    }
    s
}
