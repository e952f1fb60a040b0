//! Seeded random census for arities too large to enumerate, with z-scores
//! against the exact cell probabilities.
//!
//! `cargo run --release --example sampled_census -- 6 100000 42`

use canalizing::census::{census_sampled, default_workers};

fn main() {
    let mut args = std::env::args().skip(1).map(|s| s.parse::<u64>().expect("integer argument"));
    let n = args.next().unwrap_or(5) as usize;
    let samples = args.next().unwrap_or(100_000);
    let seed = args.next().unwrap_or(1);
    let report = census_sampled(n, samples, seed, default_workers()).unwrap_or_else(|e| panic!("{e}"));
    print!("{}", report.summary());
}
