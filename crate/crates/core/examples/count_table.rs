//! Exact counts by essential variables, depth and number of layers.
//!
//! `cargo run --example count_table -- 8`

use canalizing::build_table;

fn main() {
    let max_n: usize = std::env::args()
        .nth(1)
        .map(|s| s.parse().expect("max_n must be an integer"))
        .unwrap_or(6);
    let table = build_table(max_n).expect("table within bound");
    println!("{:>3} {:>24} {:>24}", "n", "non-degenerate", "nested canalizing");
    for n in 0..=max_n {
        println!("{n:>3} {:>24} {:>24}", table.essential(n, n).to_string(), table.full(n, n, n).to_string());
    }
    println!();
    println!("depth distribution at n = {max_n}:");
    for k in 0..=max_n {
        let layers: Vec<String> = (k.min(1)..=k)
            .map(|r| table.depth_layers(max_n, k, r).to_string())
            .collect();
        println!("  k={k}: {} (by layers: {})", table.depth_count(max_n, k), layers.join(", "));
    }
    let bad = table.identity_violations();
    println!("\nidentity violations: {}", bad.len());
}
