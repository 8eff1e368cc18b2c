use crate::support::{load_table, print_json, CliError};
use polarkern::scaling::{mu_of_table, SolverConfig};
use serde_json::json;
use std::path::Path;

pub fn mu_json(est: &polarkern::MuEstimate, cfg: &SolverConfig) -> serde_json::Value {
    json!({
        "mu": est.mu,
        "iterations": est.iterations,
        "converged": est.converged,
        "lambda": est.final_ratio,
        "config": cfg,
    })
}

pub fn run(pb: &Path, grid: Option<usize>) -> Result<(), CliError> {
    let table = load_table(pb)?;
    let mut cfg = SolverConfig::default();
    if let Some(g) = grid {
        cfg.grid_points = g;
    }
    let est = mu_of_table(&table, &cfg)?;
    print_json(&mu_json(&est, &cfg));
    if est.converged {
        Ok(())
    } else {
        Err(CliError::numerical(format!(
            "solver did not converge within {} iterations",
            cfg.max_iters
        )))
    }
}
