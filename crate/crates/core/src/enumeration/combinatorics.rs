//! Exact binomials, multinomials and integer compositions.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use super::EnumerationError;

/// `binom(n, k)`, zero when `k > n`.
pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        // exact at every step: acc * (n - i) is divisible by (i + 1)
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// `k! / (k_1! ... k_r!)` for parts summing to `k`.
pub fn multinomial(parts: &[usize]) -> BigUint {
    let mut acc = BigUint::one();
    let mut total = 0;
    for &p in parts {
        total += p;
        acc *= binomial(total, p);
    }
    acc
}

/// An ordered split of `k` into positive parts, with the number of ways to
/// distribute `k` labelled variables into blocks of those sizes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Composition {
    pub parts: Vec<usize>,
    pub multinomial: BigUint,
}

/// All compositions of `k` into exactly `r` positive parts, in
/// lexicographic order of the parts.
pub fn compositions(k: usize, r: usize) -> Result<Vec<Composition>, EnumerationError> {
    if r < 1 || r > k {
        return Err(EnumerationError::InvalidComposition { k, r });
    }
    let mut out = Vec::new();
    let mut parts = Vec::with_capacity(r);
    fill(k, r, &mut parts, &mut out);
    Ok(out)
}

fn fill(remaining: usize, slots: usize, parts: &mut Vec<usize>, out: &mut Vec<Composition>) {
    if slots == 1 {
        parts.push(remaining);
        out.push(Composition {
            multinomial: multinomial(parts),
            parts: parts.clone(),
        });
        parts.pop();
        return;
    }
    for first in 1..=remaining - (slots - 1) {
        parts.push(first);
        fill(remaining - first, slots - 1, parts, out);
        parts.pop();
    }
}

/// Number of ordered set partitions of `k` labelled items into `r`
/// non-empty blocks, optionally requiring the last block to hold at least
/// `min_last` items.
pub fn ordered_set_partitions(k: usize, r: usize, min_last: usize) -> BigUint {
    match compositions(k, r) {
        Ok(list) => list
            .into_iter()
            .filter(|c| c.parts.last().is_some_and(|&p| p >= min_last))
            .map(|c| c.multinomial)
            .sum(),
        Err(_) => BigUint::zero(),
    }
}
