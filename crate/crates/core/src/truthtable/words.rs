//! Word-level helpers for truth tables packed into `u64` words.
//!
//! Bit `i` of the packed vector is the output for the assignment whose
//! binary expansion is `i`; variable `j` is bit `j` of that index. For the
//! low six variables a single word holds both cofactors, interleaved in
//! blocks of `2^j` bits. Higher variables select whole words.

/// `LOW_HALF[j]` has a one at every bit position whose index has bit `j` clear.
pub(crate) const LOW_HALF: [u64; 6] = [
    0x5555_5555_5555_5555,
    0x3333_3333_3333_3333,
    0x0F0F_0F0F_0F0F_0F0F,
    0x00FF_00FF_00FF_00FF,
    0x0000_FFFF_0000_FFFF,
    0x0000_0000_FFFF_FFFF,
];

pub(crate) const WORD_VARS: usize = 6;

/// Number of words needed for an `n`-variable table.
pub(crate) fn word_count(n: usize) -> usize {
    if n <= WORD_VARS {
        1
    } else {
        1 << (n - WORD_VARS)
    }
}

/// Mask of the meaningful bits in each word of an `n`-variable table.
pub(crate) fn valid_mask(n: usize) -> u64 {
    if n >= WORD_VARS {
        u64::MAX
    } else {
        (1u64 << (1u32 << n)) - 1
    }
}

/// Bits of a word where in-word variable `j` (< 6) equals `value`.
pub(crate) fn half_mask(j: usize, value: bool) -> u64 {
    if value {
        !LOW_HALF[j]
    } else {
        LOW_HALF[j]
    }
}

/// Packs the bits of `x` selected by `LOW_HALF[j]` into the low 32 bits.
pub(crate) fn compress(x: u64, j: usize) -> u64 {
    let mut x = x & LOW_HALF[j];
    for t in j + 1..WORD_VARS {
        x = (x | (x >> (1u32 << (t - 1)))) & LOW_HALF[t];
    }
    x
}

/// Inverse of [`compress`] followed by duplication: the low 32 bits of `x`
/// become a word that does not depend on in-word variable `j`.
pub(crate) fn spread(x: u64, j: usize) -> u64 {
    let mut x = x & LOW_HALF[5];
    for t in (j..WORD_VARS - 1).rev() {
        let s = 1u32 << t;
        x = (x & LOW_HALF[t]) | ((x & !LOW_HALF[t]) << s);
    }
    x | (x << (1u32 << j))
}

/// Swaps the two cofactors of in-word variable `j`.
pub(crate) fn swap_halves(x: u64, j: usize) -> u64 {
    let s = 1u32 << j;
    ((x & LOW_HALF[j]) << s) | ((x >> s) & LOW_HALF[j])
}
