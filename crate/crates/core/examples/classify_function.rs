//! Layer decomposition of a single truth table.
//!
//! `cargo run --example classify_function` decomposes
//! `(x1 OR NOT x2) OR (x3 XOR x4)`; pass `<n> <table>` to classify your own.

use canalizing::{decompose, reconstruct, TruthTable};

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let f = match args.as_slice() {
        [n, table] => TruthTable::parse(n.parse().expect("n must be an integer"), table)
            .unwrap_or_else(|e| panic!("{e}")),
        _ => {
            let bit = |i: usize, v: usize| (i >> v) & 1 == 1;
            TruthTable::from_fn(4, |i| bit(i, 0) || !bit(i, 1) || (bit(i, 2) ^ bit(i, 3)))
                .expect("4 inputs")
        }
    };
    println!("table: {f}");
    let d = decompose(&f);
    println!("{d}");
    assert_eq!(reconstruct(&d).expect("valid normal form"), f);
    println!("reconstruction matches");
}
