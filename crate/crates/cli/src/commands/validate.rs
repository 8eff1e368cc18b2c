use crate::support::{load_kernel, print_json, CliError};
use serde_json::json;
use std::path::Path;

pub fn run(file: &Path) -> Result<(), CliError> {
    let kernel = load_kernel(file)?;
    let reason = if kernel.is_polarizing() {
        None
    } else if !kernel.is_nonsingular() {
        Some("singular")
    } else {
        Some("triangularizable")
    };
    print_json(&json!({
        "l": kernel.size(),
        "nonsingular": kernel.is_nonsingular(),
        "triangularizable": kernel.is_triangularizable(),
        "polarizing": kernel.is_polarizing(),
        "reason": reason,
    }));
    if kernel.is_polarizing() {
        Ok(())
    } else {
        Err(CliError::silent(1))
    }
}
