//! Published reference data for the product-kernel constructions analyzed by
//! this crate: the 5x5 and 7x7 component kernels, the four reference
//! polarization tables (for sizes 5, 10, 7 and 14), the published scaling
//! exponents, and the prior-work points used for the size-vs-exponent plot.
//!
//! Everything here is embedded verbatim and labeled
//! [`TableSource::Published`]; computed tables are never silently swapped in.

use crate::kernel::{product_kernel, Kernel};
use crate::polarization::{ETable, TableSource};

/// The 2x2 kernel `[1 0; 1 1]`.
pub fn t2() -> Kernel {
    Kernel::from_strings(&["10", "11"]).expect("valid kernel")
}

/// The reference 5x5 kernel.
pub fn t5() -> Kernel {
    Kernel::from_strings(&["10000", "01000", "01100", "11010", "00111"]).expect("valid kernel")
}

/// The reference 7x7 kernel (column-deletion construction from an 8x8 base).
pub fn t7() -> Kernel {
    Kernel::from_strings(&[
        "1000100", "1001000", "1010000", "1010100", "1100110", "1111000", "1111111",
    ])
    .expect("valid kernel")
}

/// The 10x10 product of [`t2`] and [`t5`].
pub fn t10() -> Kernel {
    product_kernel(&[t2(), t5()]).expect("within capacity")
}

/// The 14x14 product of [`t2`] and [`t7`].
pub fn t14() -> Kernel {
    product_kernel(&[t2(), t7()]).expect("within capacity")
}

fn published(l: usize, rows: Vec<Vec<u64>>, kernel: Option<Vec<String>>) -> ETable {
    let table = ETable::new(l, TableSource::Published, rows).expect("reference data in range");
    match kernel {
        Some(rows) => table.with_kernel(rows),
        None => table,
    }
}

/// Reference polarization table of the 5x5 kernel.
pub fn table_l5() -> ETable {
    published(
        5,
        vec![
            vec![0, 3, 9, 10, 5, 1],
            vec![0, 2, 9, 10, 5, 1],
            vec![0, 0, 2, 8, 5, 1],
            vec![0, 0, 0, 1, 3, 1],
            vec![0, 0, 0, 1, 2, 1],
        ],
        Some(t5().matrix().row_strings()),
    )
}

/// Reference polarization table of the 10x10 product kernel.
pub fn table_l10() -> ETable {
    published(
        10,
        vec![
            vec![0, 4, 38, 116, 209, 252, 210, 120, 45, 10, 1],
            vec![0, 2, 37, 116, 209, 252, 210, 120, 45, 10, 1],
            vec![0, 0, 0, 0, 174, 240, 208, 120, 45, 10, 1],
            vec![0, 0, 0, 0, 0, 98, 147, 104, 43, 10, 1],
            vec![0, 0, 0, 0, 0, 48, 120, 96, 42, 10, 1],
            vec![0, 0, 3, 24, 90, 150, 166, 112, 45, 10, 1],
            vec![0, 0, 2, 16, 66, 118, 150, 106, 45, 10, 1],
            vec![0, 0, 0, 0, 2, 24, 44, 48, 37, 10, 1],
            vec![0, 0, 0, 0, 0, 0, 1, 4, 7, 6, 1],
            vec![0, 0, 0, 0, 0, 0, 1, 4, 6, 4, 1],
        ],
        Some(t10().matrix().row_strings()),
    )
}

/// Reference polarization table of the 7x7 kernel.
pub fn table_l7() -> ETable {
    published(
        7,
        vec![
            vec![0, 4, 18, 34, 35, 21, 7, 1],
            vec![0, 2, 15, 33, 35, 21, 7, 1],
            vec![0, 0, 9, 31, 35, 21, 7, 1],
            vec![0, 0, 0, 4, 20, 18, 7, 1],
            vec![0, 0, 0, 2, 10, 15, 7, 1],
            vec![0, 0, 0, 1, 4, 9, 7, 1],
            vec![0, 0, 0, 0, 0, 0, 0, 1],
        ],
        Some(t7().matrix().row_strings()),
    )
}

/// Reference polarization table of the 14x14 product kernel.
pub fn table_l14() -> ETable {
    published(
        14,
        vec![
            vec![0, 0, 64, 336, 984, 1996, 3002, 3432, 3003, 2002, 1001, 364, 91, 14, 1],
            vec![0, 0, 36, 324, 967, 1990, 3001, 3432, 3003, 2002, 1001, 364, 91, 14, 1],
            vec![0, 0, 0, 252, 933, 1978, 2999, 3432, 3003, 2002, 1001, 364, 91, 14, 1],
            vec![0, 0, 0, 0, 0, 478, 2021, 2976, 2856, 1972, 998, 364, 91, 14, 1],
            vec![0, 0, 0, 0, 0, 0, 1203, 2560, 2714, 1942, 995, 364, 91, 14, 1],
            vec![0, 0, 0, 0, 0, 0, 0, 1840, 2444, 1882, 989, 364, 91, 14, 1],
            vec![0, 0, 0, 0, 0, 0, 0, 0, 0, 1642, 525, 280, 84, 14, 1],
            vec![0, 0, 4, 48, 258, 820, 1714, 2480, 2547, 1874, 985, 364, 91, 14, 1],
            vec![0, 0, 2, 24, 135, 470, 1113, 1848, 2155, 1746, 969, 364, 91, 14, 1],
            vec![0, 0, 0, 0, 9, 90, 391, 968, 1499, 1490, 937, 364, 91, 14, 1],
            vec![0, 0, 0, 0, 0, 0, 4, 32, 116, 248, 322, 232, 79, 14, 1],
            vec![0, 0, 0, 0, 0, 0, 2, 16, 58, 124, 167, 140, 67, 14, 1],
            vec![0, 0, 0, 0, 0, 0, 1, 8, 28, 56, 73, 68, 43, 14, 1],
            vec![0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1],
        ],
        Some(t14().matrix().row_strings()),
    )
}

/// A published scaling-exponent value with its reproduction tolerance and the
/// table the solver must be fed to reproduce it.
#[derive(Clone, Debug)]
pub struct MuAnchor {
    pub label: &'static str,
    pub l: usize,
    pub mu: f64,
    pub tolerance: f64,
}

/// The four published scaling exponents this crate reproduces.
///
/// The size-2 value comes from the component kernel itself; the other three
/// are reproduced by running the solver on the corresponding reference table.
pub fn mu_anchors() -> Vec<MuAnchor> {
    vec![
        MuAnchor {
            label: "l2",
            l: 2,
            mu: 3.627,
            tolerance: 0.01,
        },
        MuAnchor {
            label: "l10",
            l: 10,
            mu: 3.942,
            tolerance: 0.015,
        },
        MuAnchor {
            label: "l7",
            l: 7,
            mu: 3.984,
            tolerance: 0.015,
        },
        MuAnchor {
            label: "l14",
            l: 14,
            mu: 3.485,
            tolerance: 0.015,
        },
    ]
}

/// Passthrough points for the size-vs-exponent plot, never asserted by any
/// test.
///
/// Sizes 3..5 are the exhaustive minima over every polarizing kernel of that
/// size, computed offline with this crate's solver (deduplicated by
/// polarization table; 120 / 18624 / ~9.9M kernels). Size 6 is the minimum
/// over the 2x3 product family only (the full 6x6 space is out of reach).
/// Size 8 is the well-known best published value. Size 7 has no verifiable
/// best here; the reproduction report covers it with the computed and
/// published values of the reference 7x7 kernel instead.
pub fn plot_passthrough_points() -> Vec<(usize, f64, &'static str)> {
    vec![
        (3, 4.9446, "computed-best"),
        (4, 3.6267, "computed-best"),
        (5, 4.2364, "computed-best"),
        (6, 4.2781, "computed-best-product"),
        (8, 3.577, "literature"),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn kernels_are_polarizing() {
        for k in [t2(), t5(), t7(), t10(), t14()] {
            assert!(k.is_polarizing(), "size {}", k.size());
        }
    }

    #[test]
    fn tables_validate() {
        for t in [table_l5(), table_l10(), table_l7(), table_l14()] {
            t.validate().unwrap();
        }
    }

    #[test]
    fn table_conservation_status() {
        // The size-5 table obeys the conservation law; the others do not
        // (documented discrepancies of the reference data).
        assert!(table_l5().conservation());
        assert!(!table_l10().conservation());
        assert!(!table_l7().conservation());
    }

    // Tamper evidence for the embedded reference data: FNV-1a over a
    // canonical rendering, frozen here.
    fn fingerprint(t: &ETable) -> u64 {
        let mut h: u64 = 0xcbf29ce484222325;
        let mut eat = |b: u8| {
            h ^= b as u64;
            h = h.wrapping_mul(0x100000001b3);
        };
        for b in t.l.to_le_bytes() {
            eat(b);
        }
        for row in t.rows() {
            for &e in row {
                for b in e.to_le_bytes() {
                    eat(b);
                }
            }
        }
        if let Some(kernel) = &t.kernel {
            for row in kernel {
                for b in row.bytes() {
                    eat(b);
                }
            }
        }
        h
    }

    #[test]
    fn reference_fingerprints_are_stable() {
        assert_eq!(fingerprint(&table_l5()), 0x51a67203d2012c34);
        assert_eq!(fingerprint(&table_l10()), 0xad9ac4f941389344);
        assert_eq!(fingerprint(&table_l7()), 0xc3ca62e59f791cfc);
        assert_eq!(fingerprint(&table_l14()), 0x94b368855d4d3657);
    }
}
