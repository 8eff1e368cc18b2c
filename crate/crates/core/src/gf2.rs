//! Exact linear algebra over GF(2) on bit-packed matrices.
//!
//! Every matrix row is packed into a single `u64` word (column `c` lives at
//! bit `c`), so the supported shapes are `1..=64` in both dimensions and all
//! row operations are word XORs. Elimination always picks the lowest-index
//! nonzero pivot, so results are deterministic.

use crate::error::{Error, Result};

/// Capacity bound shared by every matrix in this crate.
pub const MAX_DIM: usize = 64;

fn check_dims(rows: usize, cols: usize) -> Result<()> {
    if rows == 0 || cols == 0 || rows > MAX_DIM || cols > MAX_DIM {
        return Err(Error::Capacity {
            rows,
            cols,
            max: MAX_DIM,
        });
    }
    Ok(())
}

fn mask(cols: usize) -> u64 {
    if cols == 64 {
        u64::MAX
    } else {
        (1u64 << cols) - 1
    }
}

/// A binary vector of length `1..=64`, bit `i` holding coordinate `i`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct BitVec {
    len: usize,
    bits: u64,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        assert!((1..=MAX_DIM).contains(&len), "BitVec length out of range");
        BitVec { len, bits: 0 }
    }

    pub fn from_bits(len: usize, bits: u64) -> Self {
        assert!((1..=MAX_DIM).contains(&len), "BitVec length out of range");
        BitVec {
            len,
            bits: bits & mask(len),
        }
    }

    /// Unit vector with a single 1 at `index`.
    pub fn unit(len: usize, index: usize) -> Self {
        assert!(index < len);
        Self::from_bits(len, 1u64 << index)
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len);
        (self.bits >> i) & 1 == 1
    }

    pub fn set(&mut self, i: usize, value: bool) {
        assert!(i < self.len);
        if value {
            self.bits |= 1 << i;
        } else {
            self.bits &= !(1 << i);
        }
    }

    pub fn weight(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_zero(&self) -> bool {
        self.bits == 0
    }

    /// Indices of the set coordinates, ascending.
    pub fn support(&self) -> Vec<usize> {
        (0..self.len).filter(|&i| self.get(i)).collect()
    }
}

impl std::fmt::Debug for BitVec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for i in 0..self.len {
            write!(f, "{}", if self.get(i) { '1' } else { '0' })?;
        }
        Ok(())
    }
}

/// Solutions of a linear system `A·x = y` over GF(2).
///
/// `particular` is absent exactly when `y` is outside the column span of `A`.
/// The null-space basis always spans `{x : A·x = 0}`.
#[derive(Clone, Debug)]
pub struct SolutionSet {
    pub particular: Option<BitVec>,
    pub nullspace_basis: Vec<BitVec>,
}

impl SolutionSet {
    pub fn is_solvable(&self) -> bool {
        self.particular.is_some()
    }

    /// Number of solutions (0 if inconsistent, else 2^dim(null)).
    pub fn solution_count(&self) -> u128 {
        if self.particular.is_some() {
            1u128 << self.nullspace_basis.len()
        } else {
            0
        }
    }

    /// Enumerates every solution; intended for small null spaces in tests.
    pub fn iter_solutions(&self) -> impl Iterator<Item = BitVec> + '_ {
        let base = self.particular;
        let n = self.nullspace_basis.len();
        (0..(1u64 << n)).filter_map(move |combo| {
            base.map(|p| {
                let mut bits = p.bits();
                for (j, v) in self.nullspace_basis.iter().enumerate() {
                    if (combo >> j) & 1 == 1 {
                        bits ^= v.bits();
                    }
                }
                BitVec::from_bits(p.len(), bits)
            })
        })
    }
}

/// Dense binary matrix, one `u64` word per row.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    words: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Result<Self> {
        check_dims(rows, cols)?;
        Ok(BitMatrix {
            rows,
            cols,
            words: vec![0; rows],
        })
    }

    pub fn identity(n: usize) -> Result<Self> {
        let mut m = Self::zeros(n, n)?;
        for i in 0..n {
            m.words[i] = 1 << i;
        }
        Ok(m)
    }

    /// Builds a matrix from row words; padding bits beyond `cols` are cleared.
    pub fn from_rows(words: Vec<u64>, cols: usize) -> Result<Self> {
        check_dims(words.len(), cols)?;
        let m = mask(cols);
        Ok(BitMatrix {
            rows: words.len(),
            cols,
            words: words.into_iter().map(|w| w & m).collect(),
        })
    }

    /// Builds a matrix from `'0'`/`'1'` row strings (test and fixture helper).
    pub fn from_strings(rows: &[&str]) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::Capacity {
                rows: 0,
                cols: 0,
                max: MAX_DIM,
            });
        }
        let cols = rows[0].len();
        check_dims(rows.len(), cols)?;
        let mut words = Vec::with_capacity(rows.len());
        for (r, s) in rows.iter().enumerate() {
            if s.len() != cols {
                return Err(Error::Dimension(format!(
                    "row {r} has {} entries, expected {cols}",
                    s.len()
                )));
            }
            let mut w = 0u64;
            for (c, ch) in s.chars().enumerate() {
                match ch {
                    '1' => w |= 1 << c,
                    '0' => {}
                    other => {
                        return Err(Error::InvalidInput(format!(
                            "unexpected character {other:?} in row {r}"
                        )))
                    }
                }
            }
            words.push(w);
        }
        BitMatrix::from_rows(words, cols)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        assert!(r < self.rows && c < self.cols);
        (self.words[r] >> c) & 1 == 1
    }

    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        assert!(r < self.rows && c < self.cols);
        if value {
            self.words[r] |= 1 << c;
        } else {
            self.words[r] &= !(1 << c);
        }
    }

    /// Row `r` as a packed word (bit `c` = entry `(r, c)`).
    pub fn row_word(&self, r: usize) -> u64 {
        assert!(r < self.rows);
        self.words[r]
    }

    pub fn row(&self, r: usize) -> BitVec {
        BitVec::from_bits(self.cols, self.row_word(r))
    }

    /// Column `c` as a packed word (bit `r` = entry `(r, c)`).
    pub fn column_word(&self, c: usize) -> u64 {
        assert!(c < self.cols);
        let mut w = 0u64;
        for r in 0..self.rows {
            w |= ((self.words[r] >> c) & 1) << r;
        }
        w
    }

    /// All columns as packed words, ascending column index.
    pub fn columns(&self) -> Vec<u64> {
        (0..self.cols).map(|c| self.column_word(c)).collect()
    }

    pub fn row_strings(&self) -> Vec<String> {
        (0..self.rows)
            .map(|r| {
                (0..self.cols)
                    .map(|c| if self.get(r, c) { '1' } else { '0' })
                    .collect()
            })
            .collect()
    }

    pub fn transpose(&self) -> BitMatrix {
        let words = (0..self.cols).map(|c| self.column_word(c)).collect();
        BitMatrix {
            rows: self.cols,
            cols: self.rows,
            words,
        }
    }

    /// GF(2) rank by Gaussian elimination; the input is untouched.
    pub fn rank(&self) -> usize {
        let mut work = self.words.clone();
        let mut rank = 0;
        for c in 0..self.cols {
            let Some(pivot) = (rank..self.rows).find(|&r| (work[r] >> c) & 1 == 1) else {
                continue;
            };
            work.swap(rank, pivot);
            for r in 0..self.rows {
                if r != rank && (work[r] >> c) & 1 == 1 {
                    work[r] ^= work[rank];
                }
            }
            rank += 1;
            if rank == self.rows {
                break;
            }
        }
        rank
    }

    pub fn is_nonsingular(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// Solves `self · x = y`, returning a particular solution (if any) and a
    /// basis of the null space. Free variables are set to zero, pivots are the
    /// lowest-index columns, so the particular solution is deterministic.
    pub fn solve(&self, y: &BitVec) -> Result<SolutionSet> {
        if y.len() != self.rows {
            return Err(Error::Dimension(format!(
                "right-hand side has length {}, matrix has {} rows",
                y.len(),
                self.rows
            )));
        }
        let mut work = self.words.clone();
        let mut rhs: u64 = y.bits(); // bit r = y coordinate of row r
        let mut pivot_cols: Vec<usize> = Vec::new();
        let mut next_row = 0usize;
        for c in 0..self.cols {
            let Some(pivot) = (next_row..self.rows).find(|&r| (work[r] >> c) & 1 == 1) else {
                continue;
            };
            work.swap(next_row, pivot);
            let (a, b) = ((rhs >> next_row) & 1, (rhs >> pivot) & 1);
            rhs = rhs & !((1 << next_row) | (1 << pivot)) | (b << next_row) | (a << pivot);
            for r in 0..self.rows {
                if r != next_row && (work[r] >> c) & 1 == 1 {
                    work[r] ^= work[next_row];
                    rhs ^= ((rhs >> next_row) & 1) << r;
                }
            }
            pivot_cols.push(c);
            next_row += 1;
            if next_row == self.rows {
                break;
            }
        }
        // Consistency: a zero row with a nonzero right-hand side kills it.
        let consistent = (next_row..self.rows).all(|r| (rhs >> r) & 1 == 0);
        let particular = consistent.then(|| {
            let mut x = BitVec::zeros(self.cols);
            for (pi, &pc) in pivot_cols.iter().enumerate() {
                x.set(pc, (rhs >> pi) & 1 == 1);
            }
            x
        });
        let mut nullspace_basis = Vec::new();
        let pivot_set: u64 = pivot_cols.iter().fold(0u64, |acc, &c| acc | (1 << c));
        for f in 0..self.cols {
            if (pivot_set >> f) & 1 == 1 {
                continue;
            }
            let mut v = BitVec::zeros(self.cols);
            v.set(f, true);
            for (pi, &pc) in pivot_cols.iter().enumerate() {
                v.set(pc, (work[pi] >> f) & 1 == 1);
            }
            nullspace_basis.push(v);
        }
        Ok(SolutionSet {
            particular,
            nullspace_basis,
        })
    }

    /// Matrix-vector product `self · x`.
    pub fn mul_vec(&self, x: &BitVec) -> Result<BitVec> {
        if x.len() != self.cols {
            return Err(Error::Dimension(format!(
                "vector has length {}, matrix has {} columns",
                x.len(),
                self.cols
            )));
        }
        let mut out = BitVec::zeros(self.rows);
        for r in 0..self.rows {
            out.set(r, (self.words[r] & x.bits()).count_ones() % 2 == 1);
        }
        Ok(out)
    }

    /// Kronecker product; block `(i, j)` of the result is `other` scaled by
    /// `self[i][j]`.
    pub fn kron(&self, other: &BitMatrix) -> Result<BitMatrix> {
        let rows = self.rows * other.rows;
        let cols = self.cols * other.cols;
        check_dims(rows, cols)?;
        let mut words = vec![0u64; rows];
        for i1 in 0..self.rows {
            for i2 in 0..other.rows {
                let mut w = 0u64;
                for j1 in 0..self.cols {
                    if self.get(i1, j1) {
                        w |= other.words[i2] << (j1 * other.cols);
                    }
                }
                words[i1 * other.rows + i2] = w;
            }
        }
        BitMatrix::from_rows(words, cols)
    }

    /// Rows `from..rows` in order, as a new matrix.
    pub fn submatrix_rows(&self, from: usize) -> Result<BitMatrix> {
        if from >= self.rows {
            return Err(Error::IndexOutOfRange(format!(
                "row {from} of a {}-row matrix",
                self.rows
            )));
        }
        BitMatrix::from_rows(self.words[from..].to_vec(), self.cols)
    }

    /// Removes row `r` and column `c`.
    pub fn delete_row_col(&self, r: usize, c: usize) -> Result<BitMatrix> {
        if r >= self.rows || c >= self.cols {
            return Err(Error::IndexOutOfRange(format!(
                "(row {r}, col {c}) of a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        if self.rows < 2 || self.cols < 2 {
            return Err(Error::Dimension(
                "cannot delete from a single-row or single-column matrix".into(),
            ));
        }
        let low = mask(c);
        let words = (0..self.rows)
            .filter(|&i| i != r)
            .map(|i| {
                let w = self.words[i];
                (w & low) | ((w >> 1) & !low)
            })
            .collect();
        BitMatrix::from_rows(words, self.cols - 1)
    }

    /// Keeps the columns whose bit is set in `keep` (a packed column mask),
    /// preserving order. `keep` must select at least one column.
    pub fn select_columns(&self, keep: u64) -> Result<BitMatrix> {
        let keep = keep & mask(self.cols);
        let kept = keep.count_ones() as usize;
        if kept == 0 {
            return Err(Error::Dimension("column selection is empty".into()));
        }
        let mut words = vec![0u64; self.rows];
        let mut out_c = 0;
        for c in 0..self.cols {
            if (keep >> c) & 1 == 1 {
                for (w, row) in words.iter_mut().zip(&self.words) {
                    *w |= ((row >> c) & 1) << out_c;
                }
                out_c += 1;
            }
        }
        BitMatrix::from_rows(words, kept)
    }
}

impl std::fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "BitMatrix {}x{}", self.rows, self.cols)?;
        for s in self.row_strings() {
            writeln!(f, "  {s}")?;
        }
        Ok(())
    }
}

impl std::fmt::Display for BitMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut first = true;
        for s in self.row_strings() {
            if !first {
                writeln!(f)?;
            }
            write!(f, "{s}")?;
            first = false;
        }
        Ok(())
    }
}

/// Exact binomial coefficient for `n <= 64`; zero outside `0..=n`.
pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    u64::try_from(acc).expect("binomial within u64 for n <= 64")
}
