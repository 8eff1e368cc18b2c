use crate::support::{load_kernel, print_json, CliError};
use polarkern::algebra::{is_self_dual, partial_distances};
use serde_json::json;
use std::path::Path;

pub fn run(file: &Path) -> Result<(), CliError> {
    let kernel = load_kernel(file)?;
    let profile = partial_distances(&kernel)?;
    let dual = is_self_dual(&kernel);
    print_json(&json!({
        "l": profile.l,
        "partial_distances": profile.d,
        "self_dual": dual.is_self_dual,
        "witness": dual.witness,
    }));
    Ok(())
}
