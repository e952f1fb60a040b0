//! Brute-force classification of every function on n <= 4 inputs, checked
//! against the counting formulas.
//!
//! `cargo run --release --example census_validate -- 4`

use canalizing::census::{census_exhaustive, default_workers};
use canalizing::enumeration::build_table;

fn main() {
    let n: usize = std::env::args()
        .nth(1)
        .map(|s| s.parse().expect("n must be an integer"))
        .unwrap_or(4);
    let report = census_exhaustive(n, default_workers()).unwrap_or_else(|e| panic!("{e}"));
    print!("{}", report.summary());
    print!("{}", report.comparison_csv(&build_table(n).expect("small table")));
    if !report.is_consistent() {
        std::process::exit(2);
    }
}
