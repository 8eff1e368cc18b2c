use crate::commands::mu::mu_json;
use crate::support::{load_kernel, load_table, print_json, CliError};
use polarkern::scaling::SolverConfig;
use polarkern::search::evaluate_product;
use serde_json::json;
use std::path::Path;

pub fn run(
    outer: &Path,
    inner: &Path,
    seed_table: Option<&Path>,
    grid: Option<usize>,
) -> Result<(), CliError> {
    let outer = load_kernel(outer)?;
    let inner = load_kernel(inner)?;
    let seed = seed_table.map(load_table).transpose()?;
    let mut cfg = SolverConfig::default();
    if let Some(g) = grid {
        cfg.grid_points = g;
    }
    let eval = evaluate_product(&outer, &inner, seed.as_ref(), &cfg)?;
    print_json(&json!({
        "l": eval.product.size(),
        "product": eval.product.matrix().row_strings(),
        "closed_form_table": &eval.closed_form_table,
        "closed_form_clamped_cells": eval
            .closed_form_out_of_range
            .iter()
            .map(|&(i, w, v)| json!({"channel": i, "weight": w, "raw": v}))
            .collect::<Vec<_>>(),
        "reduction_table": &eval.reduction_table,
        "comparison": &eval.comparison,
        "mu_closed_form": mu_json(&eval.mu_closed_form, &cfg),
        "mu_reduction": mu_json(&eval.mu_reduction, &cfg),
    }));
    Ok(())
}
