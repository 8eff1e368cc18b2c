//! Shared CLI plumbing: exit-code mapping and file loading.

use polarkern::io::{etable_from_csv, etable_from_json};
use polarkern::polarization::{ETable, TableSource};
use polarkern::{Error, Kernel};
use std::path::Path;

/// Exit-code contract: 1 domain-invalid, 2 non-convergence/no-polarization,
/// 3 parse or I/O.
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl CliError {
    pub fn domain(message: impl Into<String>) -> Self {
        CliError {
            code: 1,
            message: message.into(),
        }
    }

    pub fn numerical(message: impl Into<String>) -> Self {
        CliError {
            code: 2,
            message: message.into(),
        }
    }

    pub fn io(message: impl Into<String>) -> Self {
        CliError {
            code: 3,
            message: message.into(),
        }
    }

    /// Failure already reported on stdout; only the code matters.
    pub fn silent(code: u8) -> Self {
        CliError {
            code,
            message: String::new(),
        }
    }
}

impl From<Error> for CliError {
    fn from(err: Error) -> Self {
        let code = match err {
            Error::Parse { .. } => 3,
            Error::NoPolarization(_) => 2,
            _ => 1,
        };
        CliError {
            code,
            message: err.to_string(),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(err: std::io::Error) -> Self {
        CliError::io(err.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(err: serde_json::Error) -> Self {
        CliError::io(err.to_string())
    }
}

pub fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::io(format!("{}: {e}", path.display())))
}

pub fn load_kernel(path: &Path) -> Result<Kernel, CliError> {
    let text = read_file(path)?;
    Ok(Kernel::parse(&text)?)
}

/// Loads a table from `.json` or `.csv` (CSV defaults to source `external`).
pub fn load_table(path: &Path) -> Result<ETable, CliError> {
    let text = read_file(path)?;
    let table = match path.extension().and_then(|e| e.to_str()) {
        Some("csv") => etable_from_csv(&text, TableSource::External)?,
        _ => etable_from_json(&text)?,
    };
    Ok(table)
}

/// Either a kernel file or a table file; kernels are recognized by content.
pub fn load_table_or_kernel(path: &Path) -> Result<ETable, CliError> {
    match path.extension().and_then(|e| e.to_str()) {
        Some("json") | Some("csv") => load_table(path),
        _ => {
            let kernel = load_kernel(path)?;
            Ok(polarkern::polarization::brute_force_table(&kernel)?)
        }
    }
}

pub fn print_json(value: &serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(value).expect("valid json"));
}
