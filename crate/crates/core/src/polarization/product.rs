//! Polarization behavior of a doubled kernel `[T 0; T T]` (the Kronecker
//! product with the 2x2 kernel on the left), derived from the component
//! table instead of enumerating all `2^(2l)` patterns.
//!
//! Two derivations are provided:
//!
//! * an exact pattern reduction: writing a length-`2l` pattern as the halves
//!   `(e, e')`, the upper channel `i` is killed iff the positionwise OR
//!   `e | e'` kills channel `i` of the component, and the lower channel
//!   `l + i` is killed iff the positionwise AND `e & e'` does. Counting
//!   pattern pairs over a component killing pattern gives closed sums that
//!   match brute force exactly;
//! * a counting closed form for the upper half that subtracts an estimate of
//!   the decodable patterns built from differences of non-killing counts.
//!   The subtraction can overshoot: on some inputs it yields values outside
//!   `[0, C(2l, w)]` (including negatives), so its raw output is signed and
//!   reported as-is, with the offending cells listed.

use crate::error::{Error, Result};
use crate::gf2::binomial;
use crate::polarization::table::{ETable, TableSource};

/// Raw output of the upper-half counting closed form.
#[derive(Clone, Debug)]
pub struct SignedUpperRows {
    /// Size of the doubled kernel (`2l`).
    pub l2: usize,
    /// Rows `0..l` of the doubled table, `w = 0..=2l`, signed.
    pub rows: Vec<Vec<i64>>,
    /// Cells `(channel, weight, value)` falling outside `[0, C(2l, w)]`.
    pub out_of_range: Vec<(usize, usize, i64)>,
}

/// Upper-half counting closed form for the doubled kernel.
///
/// With `N_w = C(l, w) - E[i][w]` (non-killing counts) and
/// `X_j = N_{l-j} - N_{l-j+1}`, the count of weight-`w` killers of upper
/// channel `i` is estimated as
/// `C(2l, 2l-w) - sum_{j=1}^{floor((2l-w)/2)} X_j * C(2l-2j, 2l-w-2j)`.
/// `X_j` is kept signed; see the module notes for why the result can leave
/// the admissible range.
pub fn doubled_upper_closed_form(base: &ETable) -> SignedUpperRows {
    let l = base.l;
    let l2 = 2 * l;
    let mut rows = Vec::with_capacity(l);
    let mut out_of_range = Vec::new();
    for i in 0..l {
        let n: Vec<i128> = (0..=l)
            .map(|w| binomial(l, w) as i128 - base.entry(i, w) as i128)
            .collect();
        // x[j] for j = 1..=l
        let x: Vec<i128> = (1..=l).map(|j| n[l - j] - n[l - j + 1]).collect();
        let mut row = Vec::with_capacity(l2 + 1);
        for w in 0..=l2 {
            let mut acc = binomial(l2, l2 - w) as i128;
            for j in 1..=(l2 - w) / 2 {
                acc -= x[j - 1] * binomial(l2 - 2 * j, l2 - w - 2 * j) as i128;
            }
            // Saturate rather than panic on inputs that drive the estimate
            // outside i64; such cells are out of range anyway.
            let value = acc.clamp(i64::MIN as i128, i64::MAX as i128) as i64;
            if acc < 0 || acc > binomial(l2, w) as i128 {
                out_of_range.push((i, w, value));
            }
            row.push(value);
        }
        rows.push(row);
    }
    SignedUpperRows {
        l2,
        rows,
        out_of_range,
    }
}

/// Lower-half counts of the doubled kernel, exact for both derivations.
///
/// A pair `(e, e')` kills lower channel `l + i` iff `e & e'` kills channel
/// `i` of the component. Splitting a weight-`w` pair over a component killer
/// of weight `w0` places `w - 2w0` single erasures among the remaining
/// `l - w0` positions, each on either side:
/// `E[l+i][w] = sum_{w0} E[i][w0] * C(l-w0, w-2w0) * 2^(w-2w0)`.
pub fn doubled_lower_counts(base: &ETable) -> Vec<Vec<u64>> {
    let l = base.l;
    let l2 = 2 * l;
    (0..l)
        .map(|i| {
            (0..=l2)
                .map(|w| {
                    let lo = w.saturating_sub(l);
                    let hi = w / 2;
                    let mut acc: u128 = 0;
                    for w0 in lo..=hi.min(l) {
                        let singles = w - 2 * w0;
                        acc += base.entry(i, w0) as u128
                            * binomial(l - w0, singles) as u128
                            * (1u128 << singles);
                    }
                    u64::try_from(acc).expect("lower counts fit u64 for l <= 32")
                })
                .collect()
        })
        .collect()
}

/// Upper-half counts via the exact pattern reduction.
///
/// A pair `(e, e')` kills upper channel `i` iff `e | e'` kills channel `i`
/// of the component. A component killer of weight `w0` lifts to pairs of
/// total weight `w` by doubling `w - w0` of its erasures and assigning the
/// rest to either side:
/// `E[i][w] = sum_{w0} E[i][w0] * C(w0, 2w0-w) * 2^(2w0-w)`.
pub fn doubled_upper_reduction(base: &ETable) -> Vec<Vec<u64>> {
    let l = base.l;
    let l2 = 2 * l;
    (0..l)
        .map(|i| {
            (0..=l2)
                .map(|w| {
                    let lo = w.div_ceil(2);
                    let hi = w.min(l);
                    let mut acc: u128 = 0;
                    for w0 in lo..=hi {
                        let singles = 2 * w0 - w;
                        acc += base.entry(i, w0) as u128
                            * binomial(w0, singles) as u128
                            * (1u128 << singles);
                    }
                    u64::try_from(acc).expect("upper counts fit u64 for l <= 32")
                })
                .collect()
        })
        .collect()
}

/// Ground-truth table of the doubled kernel from a component table:
/// OR-reduction upper half, AND-reduction lower half.
pub fn doubled_table_reduction(base: &ETable) -> Result<ETable> {
    let mut rows = doubled_upper_reduction(base);
    rows.extend(doubled_lower_counts(base));
    ETable::new(2 * base.l, TableSource::Reduction, rows)
}

/// Assembles the counting-closed-form table: signed upper half plus exact
/// lower half.
///
/// With `sanitize` the out-of-range upper cells are clamped into
/// `[0, C(2l, w)]` (the published reference tables print zeros there);
/// without it any out-of-range cell is an integrity error.
pub fn doubled_table_closed_form(base: &ETable, sanitize: bool) -> Result<ETable> {
    let upper = doubled_upper_closed_form(base);
    if !sanitize && !upper.out_of_range.is_empty() {
        let (i, w, v) = upper.out_of_range[0];
        return Err(Error::Integrity(format!(
            "closed form produced out-of-range value {v} at channel {i}, weight {w} \
             ({} cells total); pass sanitize to clamp",
            upper.out_of_range.len()
        )));
    }
    let l2 = upper.l2;
    let mut rows: Vec<Vec<u64>> = upper
        .rows
        .iter()
        .map(|row| {
            row.iter()
                .enumerate()
                .map(|(w, &v)| {
                    let cap = binomial(l2, w) as i64;
                    v.clamp(0, cap) as u64
                })
                .collect()
        })
        .collect();
    rows.extend(doubled_lower_counts(base));
    ETable::new(l2, TableSource::ClosedForm, rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{product_kernel, Kernel};
    use crate::polarization::brute::brute_force_table;

    fn t2() -> Kernel {
        Kernel::from_strings(&["10", "11"]).unwrap()
    }

    fn t5_table() -> ETable {
        brute_force_table(
            &Kernel::from_strings(&["10000", "01000", "01100", "11010", "00111"]).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn reduction_matches_brute_force_for_g4() {
        let base = brute_force_table(&t2()).unwrap();
        let derived = doubled_table_reduction(&base).unwrap();
        let direct = brute_force_table(&product_kernel(&[t2(), t2()]).unwrap()).unwrap();
        assert_eq!(derived.rows(), direct.rows());
    }

    #[test]
    fn closed_form_upper_anchors_from_t5() {
        let upper = doubled_upper_closed_form(&t5_table());
        assert_eq!(upper.rows[0][1], 4);
        assert_eq!(upper.rows[0][2], 38);
        assert_eq!(upper.rows[1][2], 37);
        assert_eq!(upper.rows[2][4], 174);
        assert_eq!(upper.rows[3][5], 98);
        assert_eq!(upper.rows[4][6], 120);
        assert_eq!(upper.rows[0][9], 10);
        assert_eq!(upper.rows[0][10], 1);
        // Weight 2l: only the binomial term survives.
        for row in &upper.rows {
            assert_eq!(row[10], 1);
        }
    }

    #[test]
    fn closed_form_signed_cells_are_reported() {
        let upper = doubled_upper_closed_form(&t5_table());
        // Rows 2..=4 overshoot at low weights on this input.
        assert!(upper.out_of_range.iter().any(|&(i, w, v)| (i, w) == (2, 1) && v == -20));
        assert!(doubled_table_closed_form(&t5_table(), false).is_err());
        let sanitized = doubled_table_closed_form(&t5_table(), true).unwrap();
        assert_eq!(sanitized.entry(2, 1), 0);
        assert_eq!(sanitized.entry(2, 4), 174);
    }

    #[test]
    fn upper_reduction_counts_or_patterns() {
        // The exact upper half sees the positionwise OR of the two halves:
        // channel 0 of the doubled kernel has six weight-1 killers, not the
        // four the counting closed form reports.
        let rows = doubled_upper_reduction(&t5_table());
        assert_eq!(rows[0][1], 6);
        let closed = doubled_upper_closed_form(&t5_table());
        assert_eq!(closed.rows[0][1], 4);
    }

    #[test]
    fn lower_counts_from_t5() {
        let lower = doubled_lower_counts(&t5_table());
        // lower[i] is the row of doubled channel l + i.
        assert_eq!(lower[0][2], 3);
        assert_eq!(lower[0][3], 24);
        assert_eq!(lower[1][3], 16);
        assert_eq!(lower[0][4], 81);
        assert_eq!(lower[2][5], 12);
    }

    #[test]
    fn lower_counts_match_brute_force_for_t10() {
        let lower = doubled_lower_counts(&t5_table());
        let t10 = product_kernel(&[
            t2(),
            Kernel::from_strings(&["10000", "01000", "01100", "11010", "00111"]).unwrap(),
        ])
        .unwrap();
        let direct = brute_force_table(&t10).unwrap();
        for (i, row) in lower.iter().enumerate() {
            assert_eq!(row.as_slice(), direct.row(5 + i), "channel {}", 5 + i);
        }
    }
}
