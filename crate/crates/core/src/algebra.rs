//! Partial distances, kernel codes, and self-duality checks.
//!
//! Indices follow the 1-based convention of the published tables in reports
//! and JSON (`d_1..d_l`, code `C_i` spanned by rows `i+1..l`); storage is
//! 0-based.

use crate::error::{Error, Result};
use crate::gf2::BitMatrix;
use crate::kernel::Kernel;
use crate::polarization::ETable;
use serde::{Deserialize, Serialize};

/// Largest kernel size accepted by the exhaustive coset scans.
pub const PARTIAL_DISTANCE_MAX: usize = 24;

/// Partial distances `d[i]` of each kernel row to the span of the later rows.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartialDistanceProfile {
    pub l: usize,
    /// `d[i]` for 0-based row `i` (the published convention calls it
    /// `d_{i+1}`).
    pub d: Vec<usize>,
}

/// Generator matrix of the kernel code `C_i`: the span of rows `i..l-1`
/// (0-based). `None` is the zero code `C_l`.
pub fn kernel_code(k: &Kernel, i: usize) -> Result<Option<BitMatrix>> {
    let l = k.size();
    if i > l {
        return Err(Error::IndexOutOfRange(format!(
            "kernel code index {i} of an l={l} kernel"
        )));
    }
    if i == l {
        return Ok(None);
    }
    Ok(Some(k.matrix().submatrix_rows(i)?))
}

/// Exact partial distances by exhaustive coset scan: `d[i]` is the minimum
/// Hamming distance from row `i` to the `2^(l-1-i)` combinations of the rows
/// below it.
pub fn partial_distances(k: &Kernel) -> Result<PartialDistanceProfile> {
    let l = k.size();
    if l > PARTIAL_DISTANCE_MAX {
        return Err(Error::SizeGuard(format!(
            "coset scan limited to l <= {PARTIAL_DISTANCE_MAX}, got {l}"
        )));
    }
    let rows: Vec<u64> = (0..l).map(|r| k.matrix().row_word(r)).collect();
    let d = (0..l)
        .map(|i| {
            let below = &rows[i + 1..];
            let mut best = u32::MAX;
            for combo in 0u64..(1u64 << below.len()) {
                let mut v = rows[i];
                for (j, &row) in below.iter().enumerate() {
                    if (combo >> j) & 1 == 1 {
                        v ^= row;
                    }
                }
                best = best.min(v.count_ones());
            }
            best as usize
        })
        .collect();
    Ok(PartialDistanceProfile { l, d })
}

/// Witnessed outcome of the self-duality check `C_i = C_{l-i}^perp`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SelfDualReport {
    pub is_self_dual: bool,
    /// Code index `i` at which the first violation occurred.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failing_index: Option<usize>,
    /// 1-based rows whose dot product breaks orthogonality, smaller first.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<(usize, usize)>,
    /// Dimensions of `C_0..C_l`.
    pub dims: Vec<usize>,
}

/// Checks self-duality: for every `0 <= i <= l`, `dim C_i + dim C_{l-i} = l`
/// and every generator of `C_i` is orthogonal to every generator of
/// `C_{l-i}`. The first violation is returned as a witness.
pub fn is_self_dual(k: &Kernel) -> SelfDualReport {
    let l = k.size();
    let dims: Vec<usize> = (0..=l)
        .map(|i| {
            if i == l {
                0
            } else {
                k.matrix()
                    .submatrix_rows(i)
                    .expect("index in range")
                    .rank()
            }
        })
        .collect();
    for i in 0..=l {
        if dims[i] + dims[l - i] != l {
            return SelfDualReport {
                is_self_dual: false,
                failing_index: Some(i),
                witness: None,
                dims,
            };
        }
        // Generators of C_i are rows i..l-1; of C_{l-i}, rows l-i..l-1.
        for a in i..l {
            for b in (l - i)..l {
                let dot = (k.matrix().row_word(a) & k.matrix().row_word(b)).count_ones() % 2;
                if dot == 1 {
                    let (x, y) = (a + 1, b + 1);
                    return SelfDualReport {
                        is_self_dual: false,
                        failing_index: Some(i),
                        witness: Some((x.min(y), x.max(y))),
                        dims,
                    };
                }
            }
        }
    }
    SelfDualReport {
        is_self_dual: true,
        failing_index: None,
        witness: None,
        dims,
    }
}

/// Per-channel minimum killing weight of a ground-truth table; equals the
/// partial-distance profile for polarizing kernels.
pub fn min_kill_weights(t: &ETable) -> Result<Vec<usize>> {
    t.min_kill_weights()
}

/// Outcome of the duality-symmetry check on a table.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub enum DualityVerdict {
    /// The kernel is not self-dual, so the symmetry laws do not apply.
    NotApplicable,
    Holds,
    /// `detail` names the first failing law and location.
    Violated { detail: String },
}

/// Checks the two symmetry laws of self-dual kernels on a ground-truth table:
/// the count bound `E[i][w] + E[l+1-i][l-w] <= C(l, w)` (1-based `i`) and the
/// polynomial identity `p_{l-1-i}(z) = 1 - p_i(1-z)` (0-based) on a `z` grid
/// within 1e-12. Reports inapplicability for non-self-dual kernels.
pub fn duality_symmetry_check(k: &Kernel, t: &ETable) -> Result<DualityVerdict> {
    let l = k.size();
    if t.l != l {
        return Err(Error::Dimension(format!(
            "table size {} does not match kernel size {l}",
            t.l
        )));
    }
    if !is_self_dual(k).is_self_dual {
        return Ok(DualityVerdict::NotApplicable);
    }
    for i in 1..=l {
        for w in 0..=l {
            let bound = crate::gf2::binomial(l, w);
            let sum = t.entry(i - 1, w) + t.entry(l - i, l - w);
            if sum > bound {
                return Ok(DualityVerdict::Violated {
                    detail: format!(
                        "count bound fails at i={i} (1-based), w={w}: {sum} > {bound}"
                    ),
                });
            }
        }
    }
    let grid = 101;
    for i in 0..l {
        for step in 0..grid {
            let z = step as f64 / (grid - 1) as f64;
            let lhs = t.eval(l - 1 - i, z);
            let rhs = 1.0 - t.eval(i, 1.0 - z);
            if (lhs - rhs).abs() > 1e-12 {
                return Ok(DualityVerdict::Violated {
                    detail: format!(
                        "polynomial identity fails at channel {i}, z={z}: {lhs} vs {rhs}"
                    ),
                });
            }
        }
    }
    Ok(DualityVerdict::Holds)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::product_kernel;
    use crate::polarization::brute_force_table;
    use crate::reference;

    #[test]
    fn kernel_code_rows() {
        let t2 = reference::t2();
        let c1 = kernel_code(&t2, 1).unwrap().unwrap();
        assert_eq!(c1.row_strings(), vec!["11"]);
        assert!(kernel_code(&t2, 2).unwrap().is_none());
        let t5 = reference::t5();
        let c3 = kernel_code(&t5, 3).unwrap().unwrap();
        assert_eq!(c3.row_strings(), vec!["11010", "00111"]);
        assert!(kernel_code(&t5, 6).is_err());
    }

    #[test]
    fn partial_distances_t2_and_t5() {
        assert_eq!(partial_distances(&reference::t2()).unwrap().d, vec![1, 2]);
        assert_eq!(
            partial_distances(&reference::t5()).unwrap().d,
            vec![1, 1, 2, 3, 3]
        );
    }

    #[test]
    fn partial_distances_double_under_product() {
        let profile = partial_distances(&reference::t10()).unwrap();
        assert_eq!(profile.d, vec![1, 1, 2, 3, 3, 2, 2, 4, 6, 6]);
    }

    #[test]
    fn self_duality_verdicts() {
        assert!(is_self_dual(&reference::t2()).is_self_dual);
        let g4 = product_kernel(&[reference::t2(), reference::t2()]).unwrap();
        assert!(is_self_dual(&g4).is_self_dual);
        let report = is_self_dual(&reference::t5());
        assert!(!report.is_self_dual);
        assert_eq!(report.failing_index, Some(1));
        assert_eq!(report.witness, Some((3, 5)));
    }

    #[test]
    fn dims_count_down_for_nonsingular() {
        let report = is_self_dual(&reference::t5());
        assert_eq!(report.dims, vec![5, 4, 3, 2, 1, 0]);
    }

    #[test]
    fn min_kill_weights_match_partial_distances() {
        let table = brute_force_table(&reference::t5()).unwrap();
        assert_eq!(min_kill_weights(&table).unwrap(), vec![1, 1, 2, 3, 3]);
        let g4 = product_kernel(&[reference::t2(), reference::t2()]).unwrap();
        let table = brute_force_table(&g4).unwrap();
        assert_eq!(min_kill_weights(&table).unwrap(), vec![1, 2, 2, 4]);
    }

    #[test]
    fn duality_symmetry_on_self_dual_tables() {
        let t2 = reference::t2();
        let table = brute_force_table(&t2).unwrap();
        assert_eq!(
            duality_symmetry_check(&t2, &table).unwrap(),
            DualityVerdict::Holds
        );
        let g4 = product_kernel(&[reference::t2(), reference::t2()]).unwrap();
        let table = brute_force_table(&g4).unwrap();
        assert_eq!(
            duality_symmetry_check(&g4, &table).unwrap(),
            DualityVerdict::Holds
        );
    }

    #[test]
    fn duality_symmetry_not_applicable_for_t5() {
        let verdict =
            duality_symmetry_check(&reference::t5(), &reference::table_l5()).unwrap();
        assert_eq!(verdict, DualityVerdict::NotApplicable);
    }

    #[test]
    fn weight_bounds_partial_distance() {
        // d_i never exceeds the weight of its row.
        for k in [reference::t2(), reference::t5(), reference::t7()] {
            let profile = partial_distances(&k).unwrap();
            for (i, &d) in profile.d.iter().enumerate() {
                assert!(d <= k.matrix().row(i).weight());
                assert!(d >= 1, "nonsingular kernels have positive distances");
            }
        }
    }
}
