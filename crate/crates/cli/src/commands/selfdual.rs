use crate::support::{load_kernel, print_json, CliError};
use polarkern::algebra::is_self_dual;
use std::path::Path;

pub fn run(file: &Path) -> Result<(), CliError> {
    let kernel = load_kernel(file)?;
    let report = is_self_dual(&kernel);
    print_json(&serde_json::to_value(&report).expect("report serializes"));
    Ok(())
}
