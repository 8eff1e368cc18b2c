//! Kernel parsing and validation, polarizing-kernel counting with an
//! exhaustive enumeration oracle, and Kronecker-product construction.
//!
//! A square binary matrix polarizes exactly when it is nonsingular and no
//! column permutation makes it upper triangular. Both flags are recomputed on
//! construction and cached on the [`Kernel`].

use crate::error::{Error, Result};
use crate::gf2::BitMatrix;
use num_bigint::BigUint;
use num_traits::{One, Zero};
use rayon::prelude::*;

/// A validated square kernel with cached polarization flags.
#[derive(Clone, PartialEq, Eq)]
pub struct Kernel {
    matrix: BitMatrix,
    nonsingular: bool,
    triangularizable: bool,
}

impl Kernel {
    pub fn from_matrix(matrix: BitMatrix) -> Result<Self> {
        if !matrix.is_square() {
            return Err(Error::Dimension(format!(
                "kernel must be square, got {}x{}",
                matrix.rows(),
                matrix.cols()
            )));
        }
        let nonsingular = matrix.is_nonsingular();
        let triangularizable = is_triangularizable(&matrix);
        Ok(Kernel {
            matrix,
            nonsingular,
            triangularizable,
        })
    }

    pub fn from_strings(rows: &[&str]) -> Result<Self> {
        Kernel::from_matrix(BitMatrix::from_strings(rows)?)
    }

    pub fn size(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &BitMatrix {
        &self.matrix
    }

    pub fn is_nonsingular(&self) -> bool {
        self.nonsingular
    }

    pub fn is_triangularizable(&self) -> bool {
        self.triangularizable
    }

    pub fn is_polarizing(&self) -> bool {
        self.nonsingular && !self.triangularizable
    }

    /// Parses the kernel file format: optional `#` comment lines, then one
    /// line per row of `'0'`/`'1'` characters (internal whitespace ignored).
    pub fn parse(text: &str) -> Result<Self> {
        let mut rows: Vec<(usize, String)> = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let trimmed = raw.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let mut row = String::new();
            for ch in trimmed.chars() {
                match ch {
                    '0' | '1' => row.push(ch),
                    c if c.is_whitespace() => {}
                    c => {
                        return Err(Error::Parse {
                            line: line_no,
                            message: format!("unexpected character {c:?}"),
                        })
                    }
                }
            }
            rows.push((line_no, row));
        }
        let Some((first_line, first_row)) = rows.first() else {
            return Err(Error::Parse {
                line: 1,
                message: "no kernel rows found".into(),
            });
        };
        let width = first_row.len();
        if width == 0 {
            return Err(Error::Parse {
                line: *first_line,
                message: "empty row".into(),
            });
        }
        for (line_no, row) in &rows {
            if row.len() != width {
                return Err(Error::Parse {
                    line: *line_no,
                    message: format!("ragged row: {} entries, expected {width}", row.len()),
                });
            }
        }
        if rows.len() != width {
            let (line_no, _) = rows.last().expect("nonempty");
            return Err(Error::Parse {
                line: *line_no,
                message: format!("{} rows of width {width}; kernel must be square", rows.len()),
            });
        }
        let row_strs: Vec<&str> = rows.iter().map(|(_, r)| r.as_str()).collect();
        let matrix = BitMatrix::from_strings(&row_strs).map_err(|e| Error::Parse {
            line: *first_line,
            message: e.to_string(),
        })?;
        Kernel::from_matrix(matrix)
    }

    /// Serializes to the kernel file format; inverse of [`Kernel::parse`].
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for row in self.matrix.row_strings() {
            out.push_str(&row);
            out.push('\n');
        }
        out
    }
}

impl std::fmt::Debug for Kernel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "Kernel(l={}, nonsingular={}, triangularizable={})",
            self.size(),
            self.nonsingular,
            self.triangularizable
        )
    }
}

/// True iff some column permutation makes `m` upper triangular.
///
/// A column whose lowest-placed 1 sits in row `b` can only occupy positions
/// `>= b`. Sorting columns by that row index and requiring the `j`-th sorted
/// column to fit position `j` is an exact greedy test (Hall's condition for
/// an interval bipartite graph). Zero columns fit anywhere.
pub fn is_triangularizable(m: &BitMatrix) -> bool {
    debug_assert!(m.is_square());
    let mut bottoms: Vec<i32> = (0..m.cols())
        .map(|c| {
            let w = m.column_word(c);
            if w == 0 {
                -1
            } else {
                63 - w.leading_zeros() as i32
            }
        })
        .collect();
    bottoms.sort_unstable();
    bottoms
        .iter()
        .enumerate()
        .all(|(j, &b)| b <= j as i32)
}

/// Brute-force oracle for [`is_triangularizable`]: scans all `l!` column
/// permutations. Guarded to `l <= 8`.
pub fn is_triangularizable_by_scan(m: &BitMatrix) -> Result<bool> {
    debug_assert!(m.is_square());
    let l = m.cols();
    if l > 8 {
        return Err(Error::SizeGuard(format!(
            "permutation scan limited to l <= 8, got {l}"
        )));
    }
    let cols = m.columns();
    let mut perm: Vec<usize> = (0..l).collect();
    // Upper triangular at position j: no 1 strictly below row j.
    fn upper_triangular(cols: &[u64], perm: &[usize]) -> bool {
        perm.iter()
            .enumerate()
            .all(|(j, &c)| cols[c] >> (j + 1) == 0)
    }
    // Heap's algorithm.
    fn scan(k: usize, perm: &mut Vec<usize>, cols: &[u64]) -> bool {
        if k == 1 {
            return upper_triangular(cols, perm);
        }
        for i in 0..k {
            if scan(k - 1, perm, cols) {
                return true;
            }
            if k.is_multiple_of(2) {
                perm.swap(i, k - 1);
            } else {
                perm.swap(0, k - 1);
            }
        }
        false
    }
    Ok(scan(l, &mut perm, &cols))
}

/// Exact count of polarizing kernels of size `l`:
/// `2^{l(l-1)/2} * (prod_{i=1}^{l} (2^i - 1) - l!)`.
pub fn count_polarizing(l: usize) -> KernelCount {
    let mut nonsingular_part = BigUint::one();
    for i in 1..=l {
        nonsingular_part *= (BigUint::one() << i) - BigUint::one();
    }
    let mut factorial = BigUint::one();
    for i in 1..=l {
        factorial *= BigUint::from(i);
    }
    let diff = if nonsingular_part >= factorial {
        nonsingular_part - factorial
    } else {
        BigUint::zero()
    };
    let count = diff << (l * (l - 1) / 2);
    KernelCount {
        sizes: vec![l],
        count,
    }
}

/// Count of polarizing product kernels: the product over component sizes.
pub fn count_polarizing_product(sizes: &[usize]) -> KernelCount {
    let count = sizes
        .iter()
        .map(|&l| count_polarizing(l).count)
        .fold(BigUint::one(), |acc, c| acc * c);
    KernelCount {
        sizes: sizes.to_vec(),
        count,
    }
}

/// A kernel-counting result: the component sizes and the exact count.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelCount {
    pub sizes: Vec<usize>,
    pub count: BigUint,
}

/// Every polarizing `l x l` kernel in lexicographic order of its row strings.
/// Guarded to `l <= 4` (at most 2^16 candidates).
pub fn enumerate_polarizing(l: usize) -> Result<Vec<Kernel>> {
    if l == 0 || l > 4 {
        return Err(Error::SizeGuard(format!(
            "exhaustive enumeration limited to 1 <= l <= 4, got {l}"
        )));
    }
    let bits = l * l;
    // Index bit (bits-1 - (r*l + c)) holds entry (r, c), so ascending indices
    // enumerate row strings in lexicographic order.
    let kernels: Vec<Kernel> = (0u64..(1u64 << bits))
        .into_par_iter()
        .filter_map(|idx| {
            let mut words = vec![0u64; l];
            for (r, word) in words.iter_mut().enumerate() {
                for c in 0..l {
                    if (idx >> (bits - 1 - (r * l + c))) & 1 == 1 {
                        *word |= 1 << c;
                    }
                }
            }
            let matrix = BitMatrix::from_rows(words, l).expect("within capacity");
            let kernel = Kernel::from_matrix(matrix).expect("square");
            kernel.is_polarizing().then_some(kernel)
        })
        .collect();
    Ok(kernels)
}

/// Kronecker product of the components, in order, with flags recomputed.
pub fn product_kernel(components: &[Kernel]) -> Result<Kernel> {
    let Some((first, rest)) = components.split_first() else {
        return Err(Error::InvalidInput("empty component list".into()));
    };
    let mut acc = first.matrix().clone();
    for k in rest {
        acc = acc.kron(k.matrix())?;
    }
    Kernel::from_matrix(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t2() -> Kernel {
        Kernel::from_strings(&["10", "11"]).unwrap()
    }

    fn t5() -> Kernel {
        Kernel::from_strings(&["10000", "01000", "01100", "11010", "00111"]).unwrap()
    }

    #[test]
    fn t2_is_polarizing() {
        let k = t2();
        assert!(k.is_nonsingular());
        assert!(!k.is_triangularizable());
        assert!(k.is_polarizing());
    }

    #[test]
    fn identity_is_triangularizable() {
        for l in 1..=6 {
            let id = Kernel::from_matrix(BitMatrix::identity(l).unwrap()).unwrap();
            assert!(id.is_triangularizable());
            assert!(!id.is_polarizing());
        }
    }

    #[test]
    fn t2_kron_identity_not_triangularizable() {
        let id2 = Kernel::from_matrix(BitMatrix::identity(2).unwrap()).unwrap();
        let p = product_kernel(&[t2(), id2]).unwrap();
        // A single non-triangularizable factor already blocks every column
        // permutation of the product, so by the definition this product is
        // polarizing even though one component is not.
        assert!(!p.is_triangularizable());
        assert!(p.is_nonsingular());
        assert!(p.is_polarizing());
    }

    #[test]
    fn greedy_matches_permutation_scan_small() {
        for l in 1..=3usize {
            let bits = l * l;
            for idx in 0u64..(1 << bits) {
                let mut words = vec![0u64; l];
                for (r, word) in words.iter_mut().enumerate() {
                    for c in 0..l {
                        if (idx >> (r * l + c)) & 1 == 1 {
                            *word |= 1 << c;
                        }
                    }
                }
                let m = BitMatrix::from_rows(words, l).unwrap();
                assert_eq!(
                    is_triangularizable(&m),
                    is_triangularizable_by_scan(&m).unwrap(),
                    "disagreement on {m:?}"
                );
            }
        }
    }

    #[test]
    fn parse_t5_listing() {
        let text = "# reference 5x5 kernel\n1 0 0 0 0\n01000\n01100\n11010\n00111\n";
        let k = Kernel::parse(text).unwrap();
        assert_eq!(k.matrix(), t5().matrix());
        assert!(k.is_polarizing());
    }

    #[test]
    fn parse_identity_not_polarizing() {
        let k = Kernel::parse("10\n01\n").unwrap();
        assert!(!k.is_polarizing());
        assert!(k.is_triangularizable());
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        match Kernel::parse("10\n1\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("expected parse error, got {other:?}"),
        }
        match Kernel::parse("10\n1x\n") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("expected parse error, got {other:?}"),
        }
        assert!(matches!(
            Kernel::parse("# only comments\n"),
            Err(Error::Parse { line: 1, .. })
        ));
        // Non-square input is rejected.
        assert!(Kernel::parse("10\n11\n01\n").is_err());
    }

    #[test]
    fn serialize_round_trip() {
        let k = t5();
        let text = k.to_text();
        assert!(!text.ends_with("\n\n"));
        let back = Kernel::parse(&text).unwrap();
        assert_eq!(back.matrix(), k.matrix());
    }

    #[test]
    fn counts_match_closed_form() {
        assert_eq!(count_polarizing(1).count, BigUint::zero());
        assert_eq!(count_polarizing(2).count, BigUint::from(2u32));
        assert_eq!(count_polarizing(3).count, BigUint::from(120u32));
        assert_eq!(count_polarizing(4).count, BigUint::from(18624u32));
    }

    #[test]
    fn counts_need_arbitrary_precision() {
        // Around size 16 the closed form leaves the 64-bit range.
        let count = count_polarizing(16).count;
        assert!(count > BigUint::from(u64::MAX));
        assert_eq!(count_polarizing(16).sizes, vec![16]);
    }

    #[test]
    fn product_counts() {
        assert_eq!(count_polarizing_product(&[2, 2]).count, BigUint::from(4u32));
        assert_eq!(
            count_polarizing_product(&[2, 3]).count,
            BigUint::from(240u32)
        );
        assert_eq!(count_polarizing_product(&[2]).count, BigUint::from(2u32));
    }

    #[test]
    fn enumeration_matches_formula_small() {
        for l in 1..=3 {
            let listed = enumerate_polarizing(l).unwrap();
            assert_eq!(
                BigUint::from(listed.len()),
                count_polarizing(l).count,
                "l = {l}"
            );
        }
    }

    #[test]
    fn enumeration_l2_exact_set() {
        let listed = enumerate_polarizing(2).unwrap();
        let rows: Vec<Vec<String>> = listed.iter().map(|k| k.matrix().row_strings()).collect();
        assert_eq!(rows, vec![vec!["01", "11"], vec!["10", "11"]]);
        assert!(enumerate_polarizing(1).unwrap().is_empty());
    }

    #[test]
    fn enumeration_guard() {
        assert!(enumerate_polarizing(5).is_err());
    }

    #[test]
    fn product_kernel_flags() {
        let p = product_kernel(&[t2(), t5()]).unwrap();
        assert_eq!(p.size(), 10);
        assert!(p.is_polarizing());
        let g4 = product_kernel(&[t2(), t2()]).unwrap();
        assert!(g4.is_polarizing());
    }
}
