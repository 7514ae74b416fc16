//! JSON case files.
//!
//! Export is byte-stable: keys always appear in the order `name, level,
//! index, minus_k_cubed, X, gammas, U, v[, collection]` with no whitespace, and
//! the file ends with a single newline.

use std::fs;
use std::path::{Path, PathBuf};

use ecvc_core::FanoCase;
use serde::{Deserialize, Serialize};

/// Integers beyond ±2⁵³ are rejected so every value survives a trip through
/// an IEEE double.
pub const MAX_ABS_INTEGER: i64 = 1 << 53;

#[derive(Debug, thiserror::Error)]
pub enum CaseFileError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}, column {column}: field `{field}`: {message}")]
    Parse {
        field: String,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("field `{field}`: {value} exceeds the 2^53 integer limit")]
    Range { field: String, value: i64 },
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Gammas {
    #[serde(rename = "12")]
    g12: [i64; 4],
    #[serde(rename = "13")]
    g13: [i64; 4],
    #[serde(rename = "14")]
    g14: [i64; 4],
    #[serde(rename = "23")]
    g23: [i64; 4],
    #[serde(rename = "24")]
    g24: [i64; 4],
    #[serde(rename = "34")]
    g34: [i64; 4],
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CaseFile {
    name: String,
    level: i64,
    index: i64,
    minus_k_cubed: i64,
    #[serde(rename = "X")]
    x: [[i64; 4]; 4],
    gammas: Gammas,
    #[serde(rename = "U")]
    u: [[i64; 3]; 3],
    v: [[i64; 3]; 4],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    collection: Option<String>,
}

impl From<&FanoCase> for CaseFile {
    fn from(c: &FanoCase) -> Self {
        let [g12, g13, g14, g23, g24, g34] = c.gammas;
        CaseFile {
            name: c.name.clone(),
            level: c.level,
            index: c.index,
            minus_k_cubed: c.minus_k_cubed,
            x: c.x,
            gammas: Gammas { g12, g13, g14, g23, g24, g34 },
            u: c.u,
            v: c.v,
            collection: c.collection.clone(),
        }
    }
}

impl From<CaseFile> for FanoCase {
    fn from(f: CaseFile) -> Self {
        let g = f.gammas;
        FanoCase {
            name: f.name,
            level: f.level,
            index: f.index,
            minus_k_cubed: f.minus_k_cubed,
            x: f.x,
            gammas: [g.g12, g.g13, g.g14, g.g23, g.g24, g.g34],
            u: f.u,
            v: f.v,
            collection: f.collection,
        }
    }
}

impl CaseFile {
    fn check_range(&self) -> Result<(), CaseFileError> {
        let check = |field: String, value: i64| {
            if value.unsigned_abs() > MAX_ABS_INTEGER as u64 {
                Err(CaseFileError::Range { field, value })
            } else {
                Ok(())
            }
        };
        check("level".into(), self.level)?;
        check("index".into(), self.index)?;
        check("minus_k_cubed".into(), self.minus_k_cubed)?;
        for (i, row) in self.x.iter().enumerate() {
            for (j, &e) in row.iter().enumerate() {
                check(format!("X[{i}][{j}]"), e)?;
            }
        }
        let g = &self.gammas;
        for (label, entries) in [
            ("12", g.g12),
            ("13", g.g13),
            ("14", g.g14),
            ("23", g.g23),
            ("24", g.g24),
            ("34", g.g34),
        ] {
            for (k, &e) in entries.iter().enumerate() {
                check(format!("gammas.{label}[{k}]"), e)?;
            }
        }
        for (i, row) in self.u.iter().enumerate() {
            for (j, &e) in row.iter().enumerate() {
                check(format!("U[{i}][{j}]"), e)?;
            }
        }
        for (i, row) in self.v.iter().enumerate() {
            for (j, &e) in row.iter().enumerate() {
                check(format!("v[{i}][{j}]"), e)?;
            }
        }
        Ok(())
    }
}

/// Parses a case from JSON text. Schema violations name the offending field;
/// mathematical invariants are left to `validate_case`.
pub fn parse_case(text: &str) -> Result<FanoCase, CaseFileError> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let file: CaseFile = serde_path_to_error::deserialize(de).map_err(|e| {
        let field = e.path().to_string();
        let inner = e.into_inner();
        CaseFileError::Parse {
            field,
            line: inner.line(),
            column: inner.column(),
            message: strip_position(&inner.to_string()),
        }
    })?;
    file.check_range()?;
    Ok(file.into())
}

// serde_json appends " at line L column C"; the position is reported
// separately.
fn strip_position(message: &str) -> String {
    match message.rfind(" at line ") {
        Some(idx) => message[..idx].to_string(),
        None => message.to_string(),
    }
}

pub fn load_case(path: &Path) -> Result<FanoCase, CaseFileError> {
    let text = fs::read_to_string(path).map_err(|source| CaseFileError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_case(&text)
}

/// Canonical serialization, newline-terminated.
pub fn case_to_json(case: &FanoCase) -> String {
    let mut s = serde_json::to_string(&CaseFile::from(case)).expect("case serializes");
    s.push('\n');
    s
}

pub fn export_case(case: &FanoCase, path: &Path) -> Result<(), CaseFileError> {
    fs::write(path, case_to_json(case)).map_err(|source| CaseFileError::Io {
        path: path.to_path_buf(),
        source,
    })
}
