use crate::support::{load_kernel, print_json, CliError};
use clap::ValueEnum;
use polarkern::polarization::brute_force_table;
use polarkern::scaling::SolverConfig;
use polarkern::search::{delete_search, row_midpoint_ranking, PbMethod};
use serde_json::json;
use std::path::Path;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Method {
    /// Rank candidates by the exponent of their own table.
    BruteForce,
    /// Rank candidates by the exponent of the doubled construction
    /// (closed-form pipeline).
    ClosedForm,
}

pub fn run(base: &Path, row: usize, method: Method, grid: Option<usize>) -> Result<(), CliError> {
    let base = load_kernel(base)?;
    let mut cfg = SolverConfig::default();
    if let Some(g) = grid {
        cfg.grid_points = g;
    }
    let method = match method {
        Method::BruteForce => PbMethod::BruteForce,
        Method::ClosedForm => PbMethod::ClosedForm,
    };
    let result = delete_search(&base, row, method, &cfg)?;
    print_json(&json!({
        "base": result.base.matrix().row_strings(),
        "row": result.deleted_row,
        "method": method,
        "candidates": result
            .candidates
            .iter()
            .map(|c| {
                json!({
                    "col": c.column,
                    "valid": c.valid,
                    "mu": c.mu.as_ref().map(|est| est.mu),
                    "note": c.note,
                })
            })
            .collect::<Vec<_>>(),
        "best": result.best_column,
    }));
    Ok(())
}

pub fn rank(base: &Path) -> Result<(), CliError> {
    let base = load_kernel(base)?;
    let table = brute_force_table(&base)?;
    let ranking = row_midpoint_ranking(&table);
    print_json(&json!({
        "l": base.size(),
        "ranking": ranking,
    }));
    Ok(())
}
