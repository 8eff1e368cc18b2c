//! The killing predicate and exhaustive polarization-behavior computation.
//!
//! A pattern `e` kills bit channel `i` when the unit vector `(1, 0, ..., 0)`
//! of length `l - i` lies outside the GF(2) span of the non-erased columns of
//! the kernel restricted to rows `i..l-1`: the successive-cancellation
//! decoder then has no way to recover bit `u_i`.

use crate::error::{Error, Result};
use crate::gf2::BitVec;
use crate::kernel::Kernel;
use crate::polarization::pattern::ErasurePattern;
use crate::polarization::table::{ETable, TableSource};
use rayon::prelude::*;

/// Largest kernel size accepted by the exhaustive enumerations (2^l patterns).
pub const BRUTE_FORCE_MAX: usize = 20;

/// Decides whether `e` kills channel `i` of `k`, straight from the
/// definition: build the row-restricted, column-selected system and solve.
pub fn kills(k: &Kernel, i: usize, e: &ErasurePattern) -> Result<bool> {
    let l = k.size();
    if e.len() != l {
        return Err(Error::Dimension(format!(
            "pattern length {} does not match kernel size {l}",
            e.len()
        )));
    }
    if i >= l {
        return Err(Error::IndexOutOfRange(format!(
            "channel {i} of an l={l} kernel"
        )));
    }
    let keep = e.non_erased_mask();
    if keep == 0 {
        return Ok(true); // everything erased: nothing is decodable
    }
    let tail = k.matrix().submatrix_rows(i)?;
    let restricted = tail.select_columns(keep)?;
    let target = BitVec::unit(l - i, 0);
    let solution = restricted.solve(&target)?;
    Ok(!solution.is_solvable())
}

/// Kill flags for every channel of `k` under pattern `e`, in one elimination
/// sweep.
///
/// Reduce the non-erased columns (packed bottom-up) to a basis in which each
/// vector has a distinct highest set row. The rank of the rows-`i..l-1`
/// restriction is then the number of basis slots at index `>= i`, and channel
/// `i` survives exactly when dropping row `i` loses rank, i.e. slot `i` is
/// occupied. Returns a bitmask with bit `i` set when channel `i` is killed.
pub(crate) fn killed_channels(columns: &[u64], e: &ErasurePattern) -> u64 {
    let l = e.len();
    let mut basis = [0u64; 64];
    let mut occupied = 0u64;
    let keep = e.non_erased_mask();
    for (c, &word) in columns.iter().enumerate() {
        if (keep >> c) & 1 == 0 {
            continue;
        }
        let mut v = word;
        while v != 0 {
            let top = 63 - v.leading_zeros() as usize;
            if basis[top] == 0 {
                basis[top] = v;
                occupied |= 1 << top;
                break;
            }
            v ^= basis[top];
        }
    }
    let full = if l == 64 { u64::MAX } else { (1u64 << l) - 1 };
    !occupied & full
}

/// Exhaustive polarization behavior of `k`: `E[i][w]` counts the weight-`w`
/// patterns that kill channel `i`. Guarded to `l <=` [`BRUTE_FORCE_MAX`].
///
/// Non-polarizing kernels are accepted (the counts are still well defined);
/// callers that care should check `k.is_polarizing()` first.
pub fn brute_force_table(k: &Kernel) -> Result<ETable> {
    let l = k.size();
    if l > BRUTE_FORCE_MAX {
        return Err(Error::SizeGuard(format!(
            "brute force limited to l <= {BRUTE_FORCE_MAX}, got {l}"
        )));
    }
    let columns = k.matrix().columns();
    let total = 1u64 << l;
    // Patterns are data-parallel; integer sums make the merge order-free.
    let counts = (0..total)
        .into_par_iter()
        .fold(
            || vec![vec![0u64; l + 1]; l],
            |mut acc, bits| {
                let e = ErasurePattern::from_bits(l, bits);
                let killed = killed_channels(&columns, &e);
                let w = e.weight();
                for (i, row) in acc.iter_mut().enumerate() {
                    row[w] += (killed >> i) & 1;
                }
                acc
            },
        )
        .reduce(
            || vec![vec![0u64; l + 1]; l],
            |mut a, b| {
                for (ra, rb) in a.iter_mut().zip(b) {
                    for (ea, eb) in ra.iter_mut().zip(rb) {
                        *ea += eb;
                    }
                }
                a
            },
        );
    Ok(ETable::new(l, TableSource::BruteForce, counts)?
        .with_kernel(k.matrix().row_strings()))
}

/// Reference implementation of [`brute_force_table`]: one definitional
/// [`kills`] solve per `(channel, pattern)` pair. Kept as the equivalence
/// oracle for the sweep above.
pub fn brute_force_table_naive(k: &Kernel) -> Result<ETable> {
    let l = k.size();
    if l > BRUTE_FORCE_MAX {
        return Err(Error::SizeGuard(format!(
            "brute force limited to l <= {BRUTE_FORCE_MAX}, got {l}"
        )));
    }
    let mut counts = vec![vec![0u64; l + 1]; l];
    for e in ErasurePattern::enumerate(l) {
        let w = e.weight();
        for (i, row) in counts.iter_mut().enumerate() {
            if kills(k, i, &e)? {
                row[w] += 1;
            }
        }
    }
    Ok(ETable::new(l, TableSource::BruteForce, counts)?
        .with_kernel(k.matrix().row_strings()))
}
