//! Polarization behavior over the binary erasure channel: the killing
//! predicate, brute-force tables, closed forms and exact reductions for
//! doubled kernels, polynomial composition, and Monte-Carlo validation.

mod brute;
mod monte_carlo;
mod pattern;
mod poly;
mod product;
mod table;

pub use brute::{brute_force_table, brute_force_table_naive, kills, BRUTE_FORCE_MAX};
pub use monte_carlo::{monte_carlo_pb, ChannelEstimate, MonteCarloReport, RNG_ALGORITHM};
pub use pattern::ErasurePattern;
pub use poly::{compose, etable_from_poly, PolyPb};
pub use product::{
    doubled_lower_counts, doubled_table_closed_form, doubled_table_reduction,
    doubled_upper_closed_form, doubled_upper_reduction, SignedUpperRows,
};
pub use table::{compare_tables, ComparisonReport, ETable, Mismatch, TableSource};
