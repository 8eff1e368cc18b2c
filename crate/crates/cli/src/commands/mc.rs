use crate::support::{load_kernel, print_json, CliError};
use polarkern::polarization::monte_carlo_pb;
use std::path::Path;

pub fn run(kernel: &Path, z: f64, samples: u64, seed: u64) -> Result<(), CliError> {
    let kernel = load_kernel(kernel)?;
    let report = monte_carlo_pb(&kernel, z, samples, seed)?;
    print_json(&serde_json::to_value(&report).expect("report serializes"));
    Ok(())
}
