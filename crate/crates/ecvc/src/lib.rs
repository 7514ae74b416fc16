//! File formats, report rendering and the command-line front end for
//! [`ecvc_core`].

pub mod case_file;
pub mod cli;
pub mod report_json;

pub use case_file::{case_to_json, export_case, load_case, parse_case, CaseFileError};
pub use report_json::{input_hash, report_json, report_text};
