use crate::support::{load_table, print_json, CliError};
use polarkern::polarization::compare_tables;
use std::path::Path;

pub fn run(a: &Path, b: &Path) -> Result<(), CliError> {
    let table_a = load_table(a)?;
    let table_b = load_table(b)?;
    let report = compare_tables(&table_a, &table_b)?;
    print_json(&serde_json::to_value(&report).expect("report serializes"));
    Ok(())
}
