//! Writes the depth-proportion and fold-change CSVs (and SVG charts).
//!
//! `cargo run --example emit_figures -- figures 8`

use std::path::PathBuf;

use canalizing::build_table;
use canalizing::figures::write_figures;

fn main() {
    let mut args = std::env::args().skip(1);
    let outdir = PathBuf::from(args.next().unwrap_or_else(|| "figures".into()));
    let max_n: usize = args.next().map(|s| s.parse().expect("max_n must be an integer")).unwrap_or(5);
    let table = build_table(max_n).expect("table within bound");
    for path in write_figures(max_n, &table, &outdir, true).expect("writable output directory") {
        println!("wrote {}", path.display());
    }
}
