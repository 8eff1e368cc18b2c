//! Polarization-behavior tables: per-channel counts `E[i][w]` of weight-`w`
//! erasure patterns that kill channel `i`.
//!
//! The erasure probability of bit channel `i` at channel parameter `z` is
//! `p_i(z) = sum_w E[i][w] z^w (1-z)^(l-w)`, so the integer table is the whole
//! polarization behavior in coefficient form.

use crate::error::{Error, Result};
use crate::gf2::binomial;
use serde::{Deserialize, Serialize};

/// Provenance of a table's entries.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum TableSource {
    /// Exhaustive enumeration of all erasure patterns.
    #[serde(rename = "brute-force")]
    BruteForce,
    /// Exact pattern reduction for a doubled kernel (OR/AND semantics).
    #[serde(rename = "reduction")]
    Reduction,
    /// Counting closed form for a doubled kernel (both halves).
    #[serde(rename = "closed-form")]
    ClosedForm,
    /// Exact polynomial composition of component behaviors.
    #[serde(rename = "composition")]
    Composition,
    /// Published reference data, embedded verbatim.
    #[serde(rename = "published")]
    Published,
    /// Loaded from an external file without provenance.
    #[serde(rename = "external")]
    External,
}

impl TableSource {
    pub fn as_str(&self) -> &'static str {
        match self {
            TableSource::BruteForce => "brute-force",
            TableSource::Reduction => "reduction",
            TableSource::ClosedForm => "closed-form",
            TableSource::Composition => "composition",
            TableSource::Published => "published",
            TableSource::External => "external",
        }
    }
}

impl std::fmt::Display for TableSource {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for TableSource {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "brute-force" => Ok(TableSource::BruteForce),
            "reduction" => Ok(TableSource::Reduction),
            "closed-form" => Ok(TableSource::ClosedForm),
            "composition" => Ok(TableSource::Composition),
            "published" => Ok(TableSource::Published),
            "external" => Ok(TableSource::External),
            other => Err(Error::InvalidInput(format!("unknown table source {other:?}"))),
        }
    }
}

/// Integer polarization-behavior table for an `l`-channel kernel.
///
/// Row `i` holds `E[i][w]` for `w = 0..=l`; every entry satisfies
/// `0 <= E[i][w] <= C(l, w)`.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ETable {
    pub l: usize,
    pub source: TableSource,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub kernel: Option<Vec<String>>,
    #[serde(rename = "E")]
    entries: Vec<Vec<u64>>,
}

impl ETable {
    pub fn new(l: usize, source: TableSource, entries: Vec<Vec<u64>>) -> Result<Self> {
        let table = ETable {
            l,
            source,
            kernel: None,
            entries,
        };
        table.validate()?;
        Ok(table)
    }

    /// Attaches the kernel rows the table was computed from.
    pub fn with_kernel(mut self, rows: Vec<String>) -> Self {
        self.kernel = Some(rows);
        self
    }

    pub fn with_source(mut self, source: TableSource) -> Self {
        self.source = source;
        self
    }

    /// Shape and range checks; used after construction and deserialization.
    pub fn validate(&self) -> Result<()> {
        if self.l == 0 || self.l > crate::gf2::MAX_DIM {
            return Err(Error::Capacity {
                rows: self.l,
                cols: self.l,
                max: crate::gf2::MAX_DIM,
            });
        }
        if self.entries.len() != self.l {
            return Err(Error::Dimension(format!(
                "table has {} rows, expected {}",
                self.entries.len(),
                self.l
            )));
        }
        for (i, row) in self.entries.iter().enumerate() {
            if row.len() != self.l + 1 {
                return Err(Error::Dimension(format!(
                    "row {i} has {} weights, expected {}",
                    row.len(),
                    self.l + 1
                )));
            }
            for (w, &e) in row.iter().enumerate() {
                let cap = binomial(self.l, w);
                if e > cap {
                    return Err(Error::Integrity(format!(
                        "E[{i}][{w}] = {e} exceeds C({}, {w}) = {cap}",
                        self.l
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn entry(&self, i: usize, w: usize) -> u64 {
        self.entries[i][w]
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.entries[i]
    }

    pub fn rows(&self) -> &[Vec<u64>] {
        &self.entries
    }

    /// Evaluates `p_i(z)`; the result is clamped into `[0, 1]`.
    pub fn eval(&self, i: usize, z: f64) -> f64 {
        debug_assert!((0.0..=1.0).contains(&z));
        let l = self.l;
        // z^w and (1-z)^(l-w) tables keep the evaluation O(l).
        let mut zp = vec![1.0f64; l + 1];
        for w in 1..=l {
            zp[w] = zp[w - 1] * z;
        }
        let mut qp = vec![1.0f64; l + 1];
        for w in 1..=l {
            qp[w] = qp[w - 1] * (1.0 - z);
        }
        let mut acc = 0.0;
        for w in 0..=l {
            acc += self.entries[i][w] as f64 * zp[w] * qp[l - w];
        }
        acc.clamp(0.0, 1.0)
    }

    /// Conservation law: every weight-`w` pattern kills exactly `w` channels,
    /// so each weight column must sum to `w * C(l, w)`.
    pub fn conservation(&self) -> bool {
        (0..=self.l).all(|w| {
            let sum: u128 = self.entries.iter().map(|row| row[w] as u128).sum();
            sum == w as u128 * binomial(self.l, w) as u128
        })
    }

    /// Per-channel minimum killing weight; errors on an all-zero row.
    pub fn min_kill_weights(&self) -> Result<Vec<usize>> {
        self.entries
            .iter()
            .enumerate()
            .map(|(i, row)| {
                row.iter()
                    .position(|&e| e > 0)
                    .ok_or_else(|| Error::Integrity(format!("channel {i} has an all-zero row")))
            })
            .collect()
    }
}

impl std::fmt::Debug for ETable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "ETable l={} source={}", self.l, self.source)?;
        for (i, row) in self.entries.iter().enumerate() {
            writeln!(f, "  i={i}: {row:?}")?;
        }
        Ok(())
    }
}

/// A single differing cell between two tables.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mismatch {
    pub channel: usize,
    pub weight: usize,
    pub value_a: u64,
    pub value_b: u64,
}

/// Cell-by-cell comparison of two tables of the same size.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ComparisonReport {
    pub l: usize,
    pub source_a: TableSource,
    pub source_b: TableSource,
    pub mismatches: Vec<Mismatch>,
    pub conservation_a: bool,
    pub conservation_b: bool,
}

impl ComparisonReport {
    pub fn identical(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Compares two tables cell by cell; errors when sizes differ.
pub fn compare_tables(a: &ETable, b: &ETable) -> Result<ComparisonReport> {
    if a.l != b.l {
        return Err(Error::Dimension(format!(
            "cannot compare tables of sizes {} and {}",
            a.l, b.l
        )));
    }
    let mut mismatches = Vec::new();
    for i in 0..a.l {
        for w in 0..=a.l {
            let (va, vb) = (a.entry(i, w), b.entry(i, w));
            if va != vb {
                mismatches.push(Mismatch {
                    channel: i,
                    weight: w,
                    value_a: va,
                    value_b: vb,
                });
            }
        }
    }
    Ok(ComparisonReport {
        l: a.l,
        source_a: a.source,
        source_b: b.source,
        mismatches,
        conservation_a: a.conservation(),
        conservation_b: b.conservation(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t2_table() -> ETable {
        ETable::new(
            2,
            TableSource::BruteForce,
            vec![vec![0, 2, 1], vec![0, 0, 1]],
        )
        .unwrap()
    }

    #[test]
    fn eval_endpoints_and_midpoint() {
        let t = t2_table();
        for i in 0..2 {
            assert_eq!(t.eval(i, 0.0), 0.0);
            assert_eq!(t.eval(i, 1.0), 1.0);
        }
        // Channel 0 is 2z - z^2.
        assert!((t.eval(0, 0.5) - 0.75).abs() < 1e-15);
        assert!((t.eval(1, 0.5) - 0.25).abs() < 1e-15);
    }

    #[test]
    fn bounds_are_enforced() {
        let bad = ETable::new(2, TableSource::External, vec![vec![0, 3, 1], vec![0, 0, 1]]);
        assert!(matches!(bad, Err(Error::Integrity(_))));
    }

    #[test]
    fn conservation_of_t2() {
        assert!(t2_table().conservation());
        let skew = ETable::new(
            2,
            TableSource::External,
            vec![vec![0, 1, 1], vec![0, 0, 1]],
        )
        .unwrap();
        assert!(!skew.conservation());
    }

    #[test]
    fn min_kill_weights_and_zero_row() {
        assert_eq!(t2_table().min_kill_weights().unwrap(), vec![1, 2]);
        let degenerate = ETable::new(
            2,
            TableSource::External,
            vec![vec![0, 0, 0], vec![0, 0, 1]],
        )
        .unwrap();
        assert!(degenerate.min_kill_weights().is_err());
    }

    #[test]
    fn comparison_reports_cells() {
        let a = t2_table();
        let b = ETable::new(
            2,
            TableSource::External,
            vec![vec![0, 1, 1], vec![0, 0, 1]],
        )
        .unwrap();
        let report = compare_tables(&a, &b).unwrap();
        assert_eq!(report.mismatches.len(), 1);
        assert_eq!(report.mismatches[0].channel, 0);
        assert_eq!(report.mismatches[0].weight, 1);
        assert!(report.conservation_a);
        assert!(!report.conservation_b);
        assert!(compare_tables(&a, &a).unwrap().identical());
    }

    #[test]
    fn json_round_trip() {
        let t = t2_table().with_kernel(vec!["10".into(), "11".into()]);
        let json = serde_json::to_string(&t).unwrap();
        assert!(json.contains("\"source\":\"brute-force\""));
        assert!(json.contains("\"E\":[[0,2,1],[0,0,1]]"));
        let back: ETable = serde_json::from_str(&json).unwrap();
        back.validate().unwrap();
        assert_eq!(back, t);
    }
}
