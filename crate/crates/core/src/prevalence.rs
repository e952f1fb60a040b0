//! Prevalence of canalizing and nested canalizing functions among all
//! functions and among non-degenerate functions, and the log2 fold change
//! between the two.
//!
//! Ratios stay exact; only the final logarithm is floating point.

use std::fmt::Write as _;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::enumeration::CountTable;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PrevalenceError {
    #[error("prevalence is defined for n >= 1")]
    ZeroArity,
    #[error("n = {n} is not covered by a table built for max_n = {max_n}")]
    NotInTable { n: usize, max_n: usize },
}

#[derive(Debug, Clone, PartialEq)]
pub struct PrevalenceRecord {
    pub n: usize,
    /// Canalizing functions among non-degenerate ones.
    pub p_can: BigRational,
    /// Nested canalizing functions among non-degenerate ones.
    pub p_ncf: BigRational,
    /// Canalizing functions among all functions.
    pub p_can_naive: BigRational,
    /// Nested canalizing functions among all functions.
    pub p_ncf_naive: BigRational,
    /// `log2(p_can_naive / p_can)`.
    pub delta_can: f64,
    /// `log2(p_ncf_naive / p_ncf)`.
    pub delta_ncf: f64,
    /// Non-degenerate canalizing functions, the numerator of `p_can`.
    pub canalizing_nondegenerate: BigUint,
    /// All canalizing functions, the numerator of `p_can_naive`.
    pub canalizing_all: BigUint,
    /// Nested canalizing functions (all of them are non-degenerate).
    pub ncf: BigUint,
    /// `N(n, n)`.
    pub nondegenerate: BigUint,
    /// `N(n)`.
    pub total: BigUint,
}

fn ratio(num: &BigUint, den: &BigUint) -> BigRational {
    BigRational::new(BigInt::from(num.clone()), BigInt::from(den.clone()))
}

impl PrevalenceRecord {
    /// `p_can_naive / p_can`, the argument of the canalizing log fold change.
    pub fn fold_ratio_can(&self) -> BigRational {
        &self.p_can_naive / &self.p_can
    }

    /// `p_ncf_naive / p_ncf`.
    pub fn fold_ratio_ncf(&self) -> BigRational {
        &self.p_ncf_naive / &self.p_ncf
    }
}

/// `log2` of a positive rational.
///
/// Near 1 the exact difference `q - 1` is converted and passed through
/// `ln_1p`, so the relative error stays at a few ulps even when the ratio
/// differs from 1 only in its thousandth bit. Results smaller than the
/// smallest subnormal `f64` round to zero.
pub fn log2_rational(q: &BigRational) -> f64 {
    assert!(q.is_positive(), "logarithm of a non-positive ratio");
    let x = q - BigRational::one();
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    if x.abs() <= half {
        return x.to_f64().expect("finite ratio").ln_1p() / std::f64::consts::LN_2;
    }
    log2_int(q.numer()) - log2_int(q.denom())
}

fn log2_int(x: &BigInt) -> f64 {
    let bits = x.bits();
    if bits <= 1000 {
        x.to_f64().expect("fits in f64").log2()
    } else {
        let shift = bits - 64;
        (x >> shift).to_f64().expect("64-bit value").log2() + shift as f64
    }
}

/// Prevalence record for arity `n`.
pub fn prevalence(n: usize, table: &CountTable) -> Result<PrevalenceRecord, PrevalenceError> {
    if n == 0 {
        return Err(PrevalenceError::ZeroArity);
    }
    if n > table.max_n() {
        return Err(PrevalenceError::NotInTable {
            n,
            max_n: table.max_n(),
        });
    }
    let total = table.total(n);
    let nondegenerate = table.essential(n, n);
    let canalizing_nondegenerate: BigUint = (1..=n).map(|k| table.full(n, n, k)).sum();
    let canalizing_all: BigUint = (1..=n).map(|k| table.depth_count(n, k)).sum();
    let ncf = table.full(n, n, n);
    assert!(
        !canalizing_nondegenerate.is_zero() && !ncf.is_zero(),
        "no non-degenerate canalizing functions for n = {n}"
    );

    let p_can = ratio(&canalizing_nondegenerate, &nondegenerate);
    let p_ncf = ratio(&ncf, &nondegenerate);
    let p_can_naive = ratio(&canalizing_all, &total);
    let p_ncf_naive = ratio(&table.depth_count(n, n), &total);
    let delta_can = log2_rational(&(&p_can_naive / &p_can));
    let delta_ncf = log2_rational(&(&p_ncf_naive / &p_ncf));
    Ok(PrevalenceRecord {
        n,
        p_can,
        p_ncf,
        p_can_naive,
        p_ncf_naive,
        delta_can,
        delta_ncf,
        canalizing_nondegenerate,
        canalizing_all,
        ncf,
        nondegenerate,
        total,
    })
}

/// Records for `n = 1..=max_n`.
pub fn prevalence_series(
    max_n: usize,
    table: &CountTable,
) -> Result<Vec<PrevalenceRecord>, PrevalenceError> {
    (1..=max_n).map(|n| prevalence(n, table)).collect()
}

/// Formats `x` with `digits` significant digits, switching to scientific
/// notation outside `[1e-4, 1e6)`.
pub fn format_significant(x: f64, digits: usize) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let sci = format!("{:.*e}", digits - 1, x);
    let exp: i32 = sci[sci.find('e').unwrap() + 1..].parse().unwrap();
    if (-4..6).contains(&exp) {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        format!("{x:.decimals$}")
    } else {
        sci
    }
}

/// CSV with header `n,P_can,P_can_naive,P_ncf,P_ncf_naive,delta_can,delta_ncf`.
/// Fractions are written as `count/denominator` without reduction.
pub fn to_csv(records: &[PrevalenceRecord]) -> String {
    let mut out = String::from("n,P_can,P_can_naive,P_ncf,P_ncf_naive,delta_can,delta_ncf\n");
    for r in records {
        let _ = writeln!(
            out,
            "{},{}/{},{}/{},{}/{},{}/{},{},{}",
            r.n,
            r.canalizing_nondegenerate,
            r.nondegenerate,
            r.canalizing_all,
            r.total,
            r.ncf,
            r.nondegenerate,
            r.ncf,
            r.total,
            format_significant(r.delta_can, 12),
            format_significant(r.delta_ncf, 12),
        );
    }
    out
}

/// Human-readable table with fractions and their decimal values.
pub fn to_pretty(records: &[PrevalenceRecord]) -> String {
    let mut out = String::new();
    for r in records {
        let _ = writeln!(out, "n = {}", r.n);
        let rows = [
            ("P_can", &r.canalizing_nondegenerate, &r.nondegenerate, &r.p_can),
            ("P_can_naive", &r.canalizing_all, &r.total, &r.p_can_naive),
            ("P_ncf", &r.ncf, &r.nondegenerate, &r.p_ncf),
            ("P_ncf_naive", &r.ncf, &r.total, &r.p_ncf_naive),
        ];
        for (name, num, den, p) in rows {
            let _ = writeln!(
                out,
                "  {name:<12} {num}/{den} = {}",
                format_significant(p.to_f64().unwrap_or(0.0), 12)
            );
        }
        let _ = writeln!(out, "  delta_can    {}", format_significant(r.delta_can, 12));
        let _ = writeln!(out, "  delta_ncf    {}", format_significant(r.delta_ncf, 12));
    }
    out
}
