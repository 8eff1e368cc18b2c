//! Column-deletion search: derive an `(l-1)`-sized kernel from an `l x l`
//! kernel by deleting one chosen row and each column in turn, ranking the
//! valid candidates by scaling exponent. Also the end-to-end product-kernel
//! evaluation pipeline.

use crate::error::{Error, Result};
use crate::kernel::{product_kernel, Kernel};
use crate::polarization::{
    brute_force_table, compare_tables, doubled_table_closed_form, doubled_table_reduction,
    ComparisonReport, ETable,
};
use crate::scaling::{mu_of_table, MuEstimate, SolverConfig};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

/// How candidate polarization behavior is computed for ranking.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum PbMethod {
    /// Exhaustive table of the candidate itself.
    #[serde(rename = "brute-force")]
    BruteForce,
    /// Counting closed form for the doubled candidate, seeded by the
    /// candidate's exhaustive table: ranks candidates by the exponent of the
    /// final doubled construction.
    #[serde(rename = "closed-form")]
    ClosedForm,
}

/// One column-deletion candidate.
#[derive(Clone, Debug)]
pub struct CandidateResult {
    pub column: usize,
    /// Polarizing per the validity criterion; invalid candidates carry no mu.
    pub valid: bool,
    pub mu: Option<MuEstimate>,
    /// Failure note when a valid candidate could not be solved.
    pub note: Option<String>,
}

/// Outcome of a column-deletion sweep.
#[derive(Clone, Debug)]
pub struct SearchResult {
    pub base: Kernel,
    pub deleted_row: usize,
    pub method: PbMethod,
    /// One entry per column of the base kernel, in column order.
    pub candidates: Vec<CandidateResult>,
    /// Column index of the best valid, converged candidate (lowest mu, ties
    /// to the lowest column index).
    pub best_column: Option<usize>,
}

/// Deletes `row` and each column in turn from a polarizing base kernel,
/// computing the scaling exponent of every valid candidate; deterministic
/// ranking, candidates evaluated in parallel and gathered in column order.
pub fn delete_search(
    base: &Kernel,
    row: usize,
    method: PbMethod,
    cfg: &SolverConfig,
) -> Result<SearchResult> {
    let l = base.size();
    if !base.is_polarizing() {
        return Err(Error::InvalidInput(
            "column-deletion search requires a polarizing base kernel".into(),
        ));
    }
    if l < 3 {
        return Err(Error::InvalidInput(format!(
            "base kernel must have size >= 3, got {l}"
        )));
    }
    if row >= l {
        return Err(Error::IndexOutOfRange(format!(
            "row {row} of an l={l} kernel"
        )));
    }
    let candidates: Vec<CandidateResult> = (0..l)
        .into_par_iter()
        .map(|column| {
            let matrix = match base.matrix().delete_row_col(row, column) {
                Ok(m) => m,
                Err(err) => {
                    return CandidateResult {
                        column,
                        valid: false,
                        mu: None,
                        note: Some(err.to_string()),
                    }
                }
            };
            let kernel = match Kernel::from_matrix(matrix) {
                Ok(k) => k,
                Err(err) => {
                    return CandidateResult {
                        column,
                        valid: false,
                        mu: None,
                        note: Some(err.to_string()),
                    }
                }
            };
            if !kernel.is_polarizing() {
                return CandidateResult {
                    column,
                    valid: false,
                    mu: None,
                    note: None,
                };
            }
            let table = brute_force_table(&kernel).and_then(|t| match method {
                PbMethod::BruteForce => Ok(t),
                PbMethod::ClosedForm => doubled_table_closed_form(&t, true),
            });
            match table.and_then(|t| mu_of_table(&t, cfg)) {
                Ok(est) => CandidateResult {
                    column,
                    valid: true,
                    mu: Some(est),
                    note: None,
                },
                Err(err) => CandidateResult {
                    column,
                    valid: true,
                    mu: None,
                    note: Some(err.to_string()),
                },
            }
        })
        .collect();
    let best_column = candidates
        .iter()
        .filter_map(|c| match &c.mu {
            Some(est) if c.valid && est.converged => Some((c.column, est.mu)),
            _ => None,
        })
        .min_by(|a, b| a.1.partial_cmp(&b.1).expect("mu is finite").then(a.0.cmp(&b.0)))
        .map(|(column, _)| column);
    Ok(SearchResult {
        base: base.clone(),
        deleted_row: row,
        method,
        candidates,
        best_column,
    })
}

/// Midpoint score of each channel: rows are ranked by `|p_i(1/2) - 1/2|`
/// descending. Rows at the end of the list sit closest to the unpolarized
/// midpoint, which is what the deletion heuristic looks for; the search API
/// still takes an explicit row, this ranking is advisory.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RowScore {
    pub row: usize,
    pub value_at_half: f64,
    pub midpoint_distance: f64,
}

pub fn row_midpoint_ranking(table: &ETable) -> Vec<RowScore> {
    let mut scores: Vec<RowScore> = (0..table.l)
        .map(|row| {
            let value_at_half = table.eval(row, 0.5);
            RowScore {
                row,
                value_at_half,
                midpoint_distance: (value_at_half - 0.5).abs(),
            }
        })
        .collect();
    scores.sort_by(|a, b| {
        b.midpoint_distance
            .partial_cmp(&a.midpoint_distance)
            .expect("finite scores")
            .then(a.row.cmp(&b.row))
    });
    scores
}

/// Everything the product pipeline produces for `outer (x) inner`.
pub struct ProductEvaluation {
    pub product: Kernel,
    /// Table the closed-form path was seeded with (brute force of the inner
    /// kernel unless an override was supplied).
    pub seed_table: ETable,
    /// Closed-form table of the product (sanitized), with the raw
    /// out-of-range cells of the upper half.
    pub closed_form_table: ETable,
    pub closed_form_out_of_range: Vec<(usize, usize, i64)>,
    /// Ground-truth table via the exact pattern reduction.
    pub reduction_table: ETable,
    pub comparison: ComparisonReport,
    pub mu_closed_form: MuEstimate,
    pub mu_reduction: MuEstimate,
}

/// Runs both product paths for a doubled kernel (`outer` must be the 2x2
/// kernel) and solves for the exponent on each, attaching the cell-by-cell
/// comparison. `seed` overrides the closed-form input table; the reduction
/// path always uses the inner kernel's exhaustive table.
pub fn evaluate_product(
    outer: &Kernel,
    inner: &Kernel,
    seed: Option<&ETable>,
    cfg: &SolverConfig,
) -> Result<ProductEvaluation> {
    if outer.size() != 2 {
        return Err(Error::InvalidInput(
            "product evaluation expects the 2x2 kernel as the outer factor".into(),
        ));
    }
    let product = product_kernel(&[outer.clone(), inner.clone()])?;
    if !product.is_polarizing() {
        return Err(Error::InvalidInput("product kernel is not polarizing".into()));
    }
    let inner_table = brute_force_table(inner)?;
    let seed_table = match seed {
        Some(t) => {
            if t.l != inner.size() {
                return Err(Error::Dimension(format!(
                    "seed table size {} does not match inner kernel size {}",
                    t.l,
                    inner.size()
                )));
            }
            t.clone()
        }
        None => inner_table.clone(),
    };
    let upper = crate::polarization::doubled_upper_closed_form(&seed_table);
    let closed_form_table = doubled_table_closed_form(&seed_table, true)?
        .with_kernel(product.matrix().row_strings());
    let reduction_table =
        doubled_table_reduction(&inner_table)?.with_kernel(product.matrix().row_strings());
    let comparison = compare_tables(&closed_form_table, &reduction_table)?;
    let mu_closed_form = mu_of_table(&closed_form_table, cfg)?;
    let mu_reduction = mu_of_table(&reduction_table, cfg)?;
    Ok(ProductEvaluation {
        product,
        seed_table,
        closed_form_table,
        closed_form_out_of_range: upper.out_of_range,
        reduction_table,
        comparison,
        mu_closed_form,
        mu_reduction,
    })
}
