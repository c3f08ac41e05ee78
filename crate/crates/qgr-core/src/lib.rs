//! Exact computation of Hilbert-series data, Koszul duals, and the additive
//! invariants (K-theory, topological and ordinary Hochschild-style theories)
//! of the graded quotient category `qgr A` of a connected graded algebra,
//! from a finite presentation of `A`.

pub mod scalar;
pub mod free_algebra;
pub(crate) mod linalg;
pub mod groebner;
pub mod hilbert;
pub mod duality;
pub mod groups;
pub mod invariants;
pub mod theorem_lab;
pub mod catalog;
pub mod relparse;
pub mod specfile;
pub mod cache;
pub mod report;
pub mod runner;
