//! Exact enumeration of Boolean functions by number of essential variables,
//! canalizing depth and number of canalizing layers, together with a
//! truth-table classifier that serves as a brute-force oracle for the counts.
//!
//! - [`truthtable`]: packed truth tables, essential variables, canalizing
//!   tests and the layer decomposition.
//! - [`enumeration`]: arbitrary-precision count tables `N(n, m, k, r)`.
//! - [`prevalence`]: exact prevalence ratios and log2 fold changes.
//! - [`census`]: exhaustive and sampled classification of all truth tables.
//! - [`figures`]: CSV (and optional SVG) data behind the prevalence plots.
//! - [`cli`]: the command-line front end used by the `canalizing` binary.

pub mod truthtable;

pub use truthtable::{
    classify, decompose, reconstruct, Canalization, CanalizingLiteral, Classification, Core,
    LayerDecomposition, TruthTable, TruthTableError,
};
pub mod enumeration;

pub use enumeration::{build_table, CellKey, CountTable, EnumerationError};
pub mod prevalence;

pub use prevalence::{prevalence, prevalence_series, PrevalenceRecord};
pub mod census;

pub use census::{census_exhaustive, census_sampled, CensusReport};
pub mod figures;
pub mod cli;
