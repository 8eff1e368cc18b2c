//! Exact analysis of binary polarization kernels over the erasure channel.
//!
//! The crate computes and cross-checks everything that determines how well a
//! kernel polarizes:
//!
//! * GF(2) linear algebra on bit-packed matrices ([`gf2`]);
//! * kernel validation, polarizing-kernel counting, and Kronecker products
//!   ([`kernel`]);
//! * polarization behavior: exhaustive tables, closed forms and exact
//!   reductions for doubled kernels, polynomial composition, Monte-Carlo
//!   spot checks ([`polarization`]);
//! * partial distances and self-duality ([`algebra`]);
//! * scaling exponents via the fixed-point averaging recursion ([`scaling`]);
//! * the column-deletion design heuristic ([`search`]);
//! * embedded published reference data for the 5/7/10/14 constructions
//!   ([`mod@reference`]).
//!
//! Brute-force enumeration is kept first-class throughout so every closed
//! form is verified against an independent oracle.

pub mod algebra;
pub mod error;
pub mod gf2;
pub mod io;
pub mod kernel;
pub mod polarization;
pub mod reference;
pub mod scaling;
pub mod search;

pub use error::{Error, Result};
pub use gf2::{BitMatrix, BitVec, SolutionSet};
pub use kernel::{Kernel, KernelCount};
pub use polarization::{ErasurePattern, ETable, TableSource};
pub use scaling::{MuEstimate, SolverConfig};
