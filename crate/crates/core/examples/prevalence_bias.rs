//! Prevalence of canalization among all vs. non-degenerate functions and
//! the log2 fold change between the two estimates.
//!
//! `cargo run --example prevalence_bias -- 6`

use canalizing::{build_table, prevalence::to_pretty, prevalence_series};

fn main() {
    let max_n: usize = std::env::args()
        .nth(1)
        .map(|s| s.parse().expect("max_n must be an integer"))
        .unwrap_or(5);
    let table = build_table(max_n).expect("table within bound");
    let records = prevalence_series(max_n, &table).expect("n >= 1");
    print!("{}", to_pretty(&records));
    println!();
    for r in &records {
        let trend = if r.delta_can > 0.0 { "over" } else { "under" };
        println!(
            "n={}: ignoring degeneracy {trend}states canalization by 2^{:.4}",
            r.n,
            r.delta_can.abs()
        );
    }
}
