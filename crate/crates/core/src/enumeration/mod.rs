//! Exact counts of Boolean functions stratified by number of essential
//! variables `m`, canalizing depth `k` and number of canalizing layers `r`.
//!
//! Notation used throughout:
//!
//! - `N(n)`: all functions of `n` inputs, `2^(2^n)`.
//! - `N(n, m)`: functions with exactly `m` essential inputs.
//! - `C(n, k)`, `C(n, k, r)`: functions with depth `k` (and `r` layers).
//! - `N(n, m, k)`, `N(n, m, k, r)`: the joint stratification.
//!
//! `C(n, k, r)` is counted constructively from the layer normal form:
//! pick the `k` canalizing variables, split them into `r` ordered layers,
//! choose their canalizing inputs and the first canalized output, and
//! attach either a non-constant non-canalizing core on the other `n - k`
//! variables or a constant core (which makes the function nested
//! canalizing on the chosen `k` variables). The essential-variable
//! stratifications follow by embedding: a function with `m < n` essential
//! inputs is a non-degenerate function on an `m`-subset, and the
//! non-degenerate row is what remains.
//!
//! Everything is exact `BigUint` arithmetic.

mod combinatorics;

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};
use thiserror::Error;

pub use combinatorics::{binomial, compositions, multinomial, ordered_set_partitions, Composition};

/// Largest `max_n` accepted by [`CountTable::build`] by default.
pub const DEFAULT_BOUND: usize = 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EnumerationError {
    #[error("max_n = {requested} exceeds the configured bound of {bound}")]
    BoundExceeded { requested: usize, bound: usize },
    #[error("no composition of {k} into {r} positive parts")]
    InvalidComposition { k: usize, r: usize },
}

/// Index of a cell `N(n, m, k, r)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CellKey {
    pub n: usize,
    pub m: usize,
    pub k: usize,
    pub r: usize,
}

impl CellKey {
    pub fn new(n: usize, m: usize, k: usize, r: usize) -> Self {
        CellKey { n, m, k, r }
    }

    /// `r <= k <= m <= n` with `r = 0` exactly when `k = 0`.
    pub fn is_valid(&self) -> bool {
        self.r <= self.k && self.k <= self.m && self.m <= self.n && (self.r == 0) == (self.k == 0)
    }
}

/// `2^(2^n)`.
pub fn total_functions(n: usize) -> BigUint {
    BigUint::one() << (1usize << n)
}

/// Nested canalizing functions on `n` variables with `r` layers, `C(n, n, r)`.
///
/// The last layer must hold at least two variables, except for `n = 1`
/// where the single literal counts once per polarity.
pub fn count_ncf(n: usize, r: usize) -> BigUint {
    match n {
        0 => BigUint::zero(),
        1 if r == 1 => BigUint::from(2u32),
        1 => BigUint::zero(),
        _ => ordered_set_partitions(n, r, 2) << (n + 1),
    }
}

/// Non-degenerate functions by inclusion-exclusion over the subsets of
/// variables a function may ignore.
pub fn nondegenerate_inclusion_exclusion(n: usize) -> BigUint {
    let sum: BigInt = (0..=n)
        .map(|m| {
            let term = BigInt::from(binomial(n, m) * total_functions(m));
            if (n - m).is_multiple_of(2) {
                term
            } else {
                -term
            }
        })
        .sum();
    sum.to_biguint()
        .expect("inclusion-exclusion sum is non-negative")
}

/// `C(n, k, r)`.
pub fn count_depth_layers(n: usize, k: usize, r: usize) -> Result<BigUint, EnumerationError> {
    Ok(CountTable::build(n)?.depth_layers(n, k, r))
}

/// `N(n, m)`.
pub fn count_by_essential(n: usize, m: usize) -> Result<BigUint, EnumerationError> {
    Ok(CountTable::build(n)?.essential(n, m))
}

/// `N(n, m, k)`.
pub fn count_full(n: usize, m: usize, k: usize) -> Result<BigUint, EnumerationError> {
    Ok(CountTable::build(n)?.full(n, m, k))
}

/// `N(n, m, k, r)`.
pub fn count_full_layers(n: usize, m: usize, k: usize, r: usize) -> Result<BigUint, EnumerationError> {
    Ok(CountTable::build(n)?.full_layers(n, m, k, r))
}

/// `build_table(max_n)` with the default bound.
pub fn build_table(max_n: usize) -> Result<CountTable, EnumerationError> {
    CountTable::build(max_n)
}

fn nonneg(x: BigInt, what: &str) -> BigUint {
    x.to_biguint()
        .unwrap_or_else(|| panic!("negative count for {what}"))
}

/// All counts for `n <= max_n`.
///
/// Three routes are stored separately so that the sum identities between
/// them are real checks: the essential-variable recursion `N(n, m)`, the
/// depth recursion `N(n, m, k)` built from `C(n, k)`, and the layer
/// recursion `N(n, m, k, r)` built from `C(n, k, r)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountTable {
    max_n: usize,
    /// `[n][k][r]`
    depth_layers: Vec<Vec<Vec<BigUint>>>,
    /// `[n][m]`
    essential: Vec<Vec<BigUint>>,
    /// `[n][m][k]`
    depth: Vec<Vec<Vec<BigUint>>>,
    cells: BTreeMap<CellKey, BigUint>,
}

impl CountTable {
    pub fn build(max_n: usize) -> Result<Self, EnumerationError> {
        Self::build_with_bound(max_n, DEFAULT_BOUND)
    }

    pub fn build_with_bound(max_n: usize, bound: usize) -> Result<Self, EnumerationError> {
        if max_n > bound {
            return Err(EnumerationError::BoundExceeded {
                requested: max_n,
                bound,
            });
        }
        let mut table = CountTable {
            max_n,
            depth_layers: Vec::with_capacity(max_n + 1),
            essential: Vec::with_capacity(max_n + 1),
            depth: Vec::with_capacity(max_n + 1),
            cells: BTreeMap::new(),
        };
        for n in 0..=max_n {
            table.fill_depth_layers(n);
            table.fill_essential(n);
            table.fill_depth(n);
            table.fill_cells(n);
        }
        Ok(table)
    }

    fn fill_depth_layers(&mut self, n: usize) {
        let mut row: Vec<Vec<BigUint>> = (0..=n).map(|k| vec![BigUint::zero(); k + 1]).collect();
        let mut canalizing = BigUint::zero();
        for k in 1..=n {
            for r in 1..=k {
                let count = if k == n {
                    count_ncf(n, r)
                } else {
                    let choose = binomial(n, k);
                    let cores = &self.depth_layers[n - k][0][0] - 2u32;
                    let with_core = (&choose * ordered_set_partitions(k, r, 1) * cores) << (k + 1);
                    with_core + choose * &self.depth_layers[k][k][r]
                };
                canalizing += &count;
                row[k][r] = count;
            }
        }
        row[0][0] = nonneg(
            BigInt::from(total_functions(n)) - BigInt::from(canalizing),
            "C(n, 0)",
        );
        self.depth_layers.push(row);
    }

    fn fill_essential(&mut self, n: usize) {
        let mut row = vec![BigUint::zero(); n + 1];
        let mut degenerate = BigUint::zero();
        for m in 0..n {
            row[m] = if m == 0 {
                BigUint::from(2u32)
            } else {
                binomial(n, m) * &self.essential[m][m]
            };
            degenerate += &row[m];
        }
        row[n] = if n == 0 {
            BigUint::from(2u32)
        } else {
            nonneg(
                BigInt::from(total_functions(n)) - BigInt::from(degenerate),
                "N(n, n)",
            )
        };
        self.essential.push(row);
    }

    fn fill_depth(&mut self, n: usize) {
        let mut row: Vec<Vec<BigUint>> = (0..=n).map(|_| vec![BigUint::zero(); n + 1]).collect();
        for k in 0..=n {
            let mut lower = BigUint::zero();
            for m in k..n {
                let v = if m == 0 {
                    BigUint::from(2u32)
                } else {
                    binomial(n, m) * &self.depth[m][m][k]
                };
                lower += &v;
                row[m][k] = v;
            }
            row[n][k] = if n == 0 {
                BigUint::from(2u32)
            } else {
                nonneg(
                    BigInt::from(self.depth_count(n, k)) - BigInt::from(lower),
                    "N(n, n, k)",
                )
            };
        }
        self.depth.push(row);
    }

    fn fill_cells(&mut self, n: usize) {
        for k in 0..=n {
            for r in 0..=k {
                if (r == 0) != (k == 0) {
                    continue;
                }
                let mut lower = BigUint::zero();
                for m in k..n {
                    let v = if m == 0 {
                        BigUint::from(2u32)
                    } else {
                        binomial(n, m) * &self.cells[&CellKey::new(m, m, k, r)]
                    };
                    lower += &v;
                    self.cells.insert(CellKey::new(n, m, k, r), v);
                }
                let top = if n == 0 {
                    BigUint::from(2u32)
                } else {
                    nonneg(
                        BigInt::from(self.depth_layers[n][k][r].clone()) - BigInt::from(lower),
                        "N(n, n, k, r)",
                    )
                };
                self.cells.insert(CellKey::new(n, n, k, r), top);
            }
        }
    }

    pub fn max_n(&self) -> usize {
        self.max_n
    }

    fn check_n(&self, n: usize) {
        assert!(
            n <= self.max_n,
            "n = {n} is outside a table built for max_n = {}",
            self.max_n
        );
    }

    /// `N(n) = 2^(2^n)`.
    pub fn total(&self, n: usize) -> BigUint {
        self.check_n(n);
        total_functions(n)
    }

    /// `N(n, m)` from the essential-variable recursion.
    pub fn essential(&self, n: usize, m: usize) -> BigUint {
        self.check_n(n);
        self.essential[n].get(m).cloned().unwrap_or_default()
    }

    /// `C(n, k)`.
    pub fn depth_count(&self, n: usize, k: usize) -> BigUint {
        self.check_n(n);
        self.depth_layers[n]
            .get(k)
            .map(|row| row.iter().sum())
            .unwrap_or_default()
    }

    /// `C(n, k, r)`.
    pub fn depth_layers(&self, n: usize, k: usize, r: usize) -> BigUint {
        self.check_n(n);
        self.depth_layers[n]
            .get(k)
            .and_then(|row| row.get(r))
            .cloned()
            .unwrap_or_default()
    }

    /// `N(n, m, k)` from the depth recursion.
    pub fn full(&self, n: usize, m: usize, k: usize) -> BigUint {
        self.check_n(n);
        self.depth[n]
            .get(m)
            .and_then(|row| row.get(k))
            .cloned()
            .unwrap_or_default()
    }

    /// `N(n, m, k, r)` from the layer recursion.
    pub fn full_layers(&self, n: usize, m: usize, k: usize, r: usize) -> BigUint {
        self.check_n(n);
        self.cells
            .get(&CellKey::new(n, m, k, r))
            .cloned()
            .unwrap_or_default()
    }

    /// Every valid cell `(n, m, k, r)`, zeros included, in key order.
    pub fn cells(&self) -> impl Iterator<Item = (&CellKey, &BigUint)> {
        self.cells.iter()
    }

    /// Cells of a single arity.
    pub fn cells_for(&self, n: usize) -> impl Iterator<Item = (&CellKey, &BigUint)> {
        self.cells
            .range(CellKey::new(n, 0, 0, 0)..=CellKey::new(n, usize::MAX, usize::MAX, usize::MAX))
    }

    /// Returns a copy with one cell overwritten. Intended for fault
    /// injection when exercising the census comparison.
    pub fn with_cell(mut self, key: CellKey, value: BigUint) -> Self {
        self.cells.insert(key, value);
        self
    }

    /// Full table as CSV with header `n,m,k,r,count`.
    pub fn to_csv(&self) -> String {
        self.to_csv_filtered(|_| true)
    }

    pub fn to_csv_filtered(&self, mut keep: impl FnMut(&CellKey) -> bool) -> String {
        let mut out = String::from("n,m,k,r,count\n");
        for (key, count) in self.cells.iter().filter(|(key, _)| keep(key)) {
            let _ = writeln!(out, "{},{},{},{},{}", key.n, key.m, key.k, key.r, count);
        }
        out
    }

    /// Checks every sum identity and structural zero, returning a
    /// description of each violation.
    pub fn identity_violations(&self) -> Vec<String> {
        let mut bad = Vec::new();
        let mut check = |ok: bool, what: String| {
            if !ok {
                bad.push(what);
            }
        };
        for n in 0..=self.max_n {
            let total = total_functions(n);
            let by_m: BigUint = (0..=n).map(|m| self.essential(n, m)).sum();
            check(by_m == total, format!("sum_m N({n},m) != N({n})"));
            let by_k: BigUint = (0..=n).map(|k| self.depth_count(n, k)).sum();
            check(by_k == total, format!("sum_k C({n},k) != N({n})"));
            for m in 0..=n {
                let s: BigUint = (0..=n).map(|k| self.full(n, m, k)).sum();
                check(s == self.essential(n, m), format!("sum_k N({n},{m},k) != N({n},{m})"));
            }
            for k in 0..=n {
                let s: BigUint = (0..=n).map(|m| self.full(n, m, k)).sum();
                check(s == self.depth_count(n, k), format!("sum_m N({n},m,{k}) != C({n},{k})"));
                let s: BigUint = (0..=k).map(|r| self.depth_layers(n, k, r)).sum();
                check(s == self.depth_count(n, k), format!("sum_r C({n},{k},r) != C({n},{k})"));
                for m in 0..=n {
                    let s: BigUint = (0..=k).map(|r| self.full_layers(n, m, k, r)).sum();
                    check(
                        s == self.full(n, m, k),
                        format!("sum_r N({n},{m},{k},r) != N({n},{m},{k})"),
                    );
                    if m < k {
                        check(self.full(n, m, k).is_zero(), format!("N({n},{m},{k}) != 0 with m < k"));
                    }
                }
                for r in 0..=k {
                    let s: BigUint = (0..=n).map(|m| self.full_layers(n, m, k, r)).sum();
                    check(
                        s == self.depth_layers(n, k, r),
                        format!("sum_m N({n},m,{k},{r}) != C({n},{k},{r})"),
                    );
                }
            }
            if n >= 1 {
                check(self.full(n, n, n - 1).is_zero(), format!("N({n},{n},{}) != 0", n - 1));
                check(
                    self.full(n, n, n) == self.depth_count(n, n),
                    format!("N({n},{n},{n}) != C({n},{n})"),
                );
            }
            check(
                self.essential(n, n) == nondegenerate_inclusion_exclusion(n),
                format!("N({n},{n}) disagrees with inclusion-exclusion"),
            );
        }
        bad
    }
}
