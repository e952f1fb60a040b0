//! Truth tables and their classification by essential variables,
//! canalizing depth and canalizing layers.
//!
//! A [`TruthTable`] stores the `2^n` outputs of a Boolean function packed
//! into 64-bit words. Entry `i` is the output for the assignment in which
//! variable `x_{j+1}` takes the value of bit `j` of `i` (least significant
//! bit first). Variables are addressed by zero-based index in the API and
//! printed one-based (`x1`, `x2`, ...).

mod decompose;
mod words;

use std::fmt;
use std::ops::{BitAnd, BitOr, BitXor, Not};

use thiserror::Error;

pub use decompose::{
    classify, decompose, reconstruct, CanalizingLiteral, Classification, Core, DecompositionError,
    LayerDecomposition,
};

use words::{half_mask, swap_halves, valid_mask, word_count, WORD_VARS};

/// Largest supported arity.
pub const MAX_ARITY: usize = 31;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TruthTableError {
    #[error("arity {0} exceeds the supported maximum of {MAX_ARITY}")]
    ArityTooLarge(usize),
    #[error("expected {expected} binary digits or {expected_hex} hex digits for n = {n}, got {found} characters")]
    LengthMismatch {
        n: usize,
        expected: usize,
        expected_hex: usize,
        found: usize,
    },
    #[error("invalid character {ch:?} at position {position}")]
    InvalidCharacter { ch: char, position: usize },
    #[error("hex table sets bits beyond the 2^{n} entries of the table")]
    ExcessBits { n: usize },
    #[error("variable index {index} out of range for a function of {n} inputs")]
    VariableOutOfRange { index: usize, n: usize },
    #[error("expected {expected} words, got {found}")]
    WordCount { expected: usize, found: usize },
}

/// A Boolean function of `n` inputs as an explicit output column.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TruthTable {
    n: usize,
    words: Vec<u64>,
}

/// Result of testing a single variable for canalization.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Canalization {
    /// Canalizing input `a`.
    pub input: bool,
    /// Canalized output `b`.
    pub output: bool,
    /// Both values of the variable force the output (the function is a
    /// literal of this variable). `input` is then reported as `false`.
    pub bidirectional: bool,
}

impl TruthTable {
    fn check_arity(n: usize) -> Result<(), TruthTableError> {
        if n > MAX_ARITY {
            Err(TruthTableError::ArityTooLarge(n))
        } else {
            Ok(())
        }
    }

    pub fn constant(n: usize, value: bool) -> Result<Self, TruthTableError> {
        Self::check_arity(n)?;
        let fill = if value { valid_mask(n) } else { 0 };
        Ok(TruthTable {
            n,
            words: vec![fill; word_count(n)],
        })
    }

    /// The literal `x_var` on `n` inputs.
    pub fn variable(n: usize, var: usize) -> Result<Self, TruthTableError> {
        Self::check_arity(n)?;
        if var >= n {
            return Err(TruthTableError::VariableOutOfRange { index: var, n });
        }
        let words = if var < WORD_VARS {
            vec![half_mask(var, true) & valid_mask(n); word_count(n)]
        } else {
            let bit = var - WORD_VARS;
            (0..word_count(n))
                .map(|i| if i >> bit & 1 == 1 { u64::MAX } else { 0 })
                .collect()
        };
        Ok(TruthTable { n, words })
    }

    /// Builds a table by evaluating `f` at every assignment index.
    pub fn from_fn<F: FnMut(usize) -> bool>(n: usize, mut f: F) -> Result<Self, TruthTableError> {
        let mut table = Self::constant(n, false)?;
        for i in 0..(1usize << n) {
            if f(i) {
                table.words[i >> 6] |= 1 << (i & 63);
            }
        }
        Ok(table)
    }

    /// Builds a table from packed words. Bits beyond `2^n` must be clear.
    pub fn from_words(n: usize, words: Vec<u64>) -> Result<Self, TruthTableError> {
        Self::check_arity(n)?;
        if words.len() != word_count(n) {
            return Err(TruthTableError::WordCount {
                expected: word_count(n),
                found: words.len(),
            });
        }
        if n < WORD_VARS && words[0] & !valid_mask(n) != 0 {
            return Err(TruthTableError::ExcessBits { n });
        }
        Ok(TruthTable { n, words })
    }

    /// Parses the canonical binary form `b_0 b_1 ... b_{2^n - 1}` or the
    /// hexadecimal form (index 0 is the least significant bit of the last
    /// digit). A `0x` prefix forces hexadecimal; otherwise the length decides.
    pub fn parse(n: usize, text: &str) -> Result<Self, TruthTableError> {
        Self::check_arity(n)?;
        let text = text.trim();
        let entries = 1usize << n;
        let hex_len = entries.div_ceil(4);
        let (forced_hex, body) = match text.strip_prefix("0x").or_else(|| text.strip_prefix("0X")) {
            Some(rest) => (true, rest),
            None => (false, text),
        };
        let len = body.chars().count();
        if !forced_hex && len == entries && body.chars().all(|c| c == '0' || c == '1') {
            return Self::from_fn(n, |i| body.as_bytes()[i] == b'1');
        }
        if len != hex_len {
            return Err(TruthTableError::LengthMismatch {
                n,
                expected: entries,
                expected_hex: hex_len,
                found: len,
            });
        }
        let mut table = Self::constant(n, false)?;
        for (pos, ch) in body.chars().enumerate() {
            let digit = ch.to_digit(16).ok_or(TruthTableError::InvalidCharacter {
                ch,
                position: pos + if forced_hex { 2 } else { 0 },
            })? as u64;
            let base = 4 * (hex_len - 1 - pos);
            for b in 0..4 {
                if digit >> b & 1 == 1 {
                    if base + b >= entries {
                        return Err(TruthTableError::ExcessBits { n });
                    }
                    table.words[(base + b) >> 6] |= 1 << ((base + b) & 63);
                }
            }
        }
        Ok(table)
    }

    pub fn arity(&self) -> usize {
        self.n
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    /// Output at the assignment with index `index`.
    pub fn get(&self, index: usize) -> bool {
        assert!(index < 1usize << self.n, "assignment index out of range");
        self.words[index >> 6] >> (index & 63) & 1 == 1
    }

    /// Output for an explicit assignment, `inputs[j]` being `x_{j+1}`.
    pub fn eval(&self, inputs: &[bool]) -> bool {
        assert_eq!(inputs.len(), self.n, "wrong number of inputs");
        let index = inputs
            .iter()
            .enumerate()
            .fold(0usize, |acc, (j, &b)| acc | (b as usize) << j);
        self.get(index)
    }

    pub fn count_ones(&self) -> u64 {
        self.words.iter().map(|w| u64::from(w.count_ones())).sum()
    }

    /// `Some(value)` if the function is constant.
    pub fn constant_value(&self) -> Option<bool> {
        let full = valid_mask(self.n);
        if self.words.iter().all(|&w| w == 0) {
            Some(false)
        } else if self.words.iter().all(|&w| w == full) {
            Some(true)
        } else {
            None
        }
    }

    fn check_var(&self, var: usize) -> Result<(), TruthTableError> {
        if var >= self.n {
            Err(TruthTableError::VariableOutOfRange {
                index: var,
                n: self.n,
            })
        } else {
            Ok(())
        }
    }

    /// Whether the two cofactors of `var` differ.
    pub fn depends_on(&self, var: usize) -> Result<bool, TruthTableError> {
        self.check_var(var)?;
        Ok(self.depends_on_unchecked(var))
    }

    fn depends_on_unchecked(&self, var: usize) -> bool {
        if var < WORD_VARS {
            let mask = half_mask(var, false) & valid_mask(self.n);
            let s = 1u32 << var;
            self.words.iter().any(|&w| ((w >> s) ^ w) & mask != 0)
        } else {
            let stride = 1usize << (var - WORD_VARS);
            (0..self.words.len())
                .filter(|i| i & stride == 0)
                .any(|i| self.words[i] != self.words[i | stride])
        }
    }

    /// Indices of the essential variables, ascending.
    pub fn essential_variables(&self) -> Vec<usize> {
        (0..self.n).filter(|&v| self.depends_on_unchecked(v)).collect()
    }

    pub fn is_nondegenerate(&self) -> bool {
        (0..self.n).all(|v| self.depends_on_unchecked(v))
    }

    /// `Some(b)` if fixing `x_var = value` makes the function constantly `b`.
    pub fn cofactor_constant(&self, var: usize, value: bool) -> Result<Option<bool>, TruthTableError> {
        self.check_var(var)?;
        Ok(self.cofactor_constant_unchecked(var, value))
    }

    fn cofactor_constant_unchecked(&self, var: usize, value: bool) -> Option<bool> {
        let (mut any_zero, mut any_one) = (false, false);
        if var < WORD_VARS {
            let sel = half_mask(var, value) & valid_mask(self.n);
            for &w in &self.words {
                let part = w & sel;
                any_one |= part != 0;
                any_zero |= part != sel;
                if any_zero && any_one {
                    return None;
                }
            }
        } else {
            let stride = 1usize << (var - WORD_VARS);
            for (i, &w) in self.words.iter().enumerate() {
                if (i & stride != 0) == value {
                    any_one |= w != 0;
                    any_zero |= w != u64::MAX;
                    if any_zero && any_one {
                        return None;
                    }
                }
            }
        }
        Some(any_one)
    }

    /// Tests whether `x_var` is canalizing: some input value forces a
    /// constant output and the complementary cofactor is not constantly
    /// that output.
    pub fn canalizing(&self, var: usize) -> Result<Option<Canalization>, TruthTableError> {
        self.check_var(var)?;
        Ok(self.canalizing_unchecked(var))
    }

    pub(crate) fn canalizing_unchecked(&self, var: usize) -> Option<Canalization> {
        let on_zero = self.cofactor_constant_unchecked(var, false);
        let on_one = self.cofactor_constant_unchecked(var, true);
        match (on_zero, on_one) {
            (Some(b0), Some(b1)) if b0 != b1 => Some(Canalization {
                input: false,
                output: b0,
                bidirectional: true,
            }),
            (Some(_), Some(_)) => None,
            (Some(b), None) => Some(Canalization {
                input: false,
                output: b,
                bidirectional: false,
            }),
            (None, Some(b)) => Some(Canalization {
                input: true,
                output: b,
                bidirectional: false,
            }),
            (None, None) => None,
        }
    }

    /// The subfunction on `n - 1` inputs obtained by fixing `x_var = value`.
    /// Variables above `var` shift down by one.
    pub fn restrict(&self, var: usize, value: bool) -> Result<TruthTable, TruthTableError> {
        self.check_var(var)?;
        Ok(self.restrict_unchecked(var, value))
    }

    pub(crate) fn restrict_unchecked(&self, var: usize, value: bool) -> TruthTable {
        let n = self.n - 1;
        let words = if var >= WORD_VARS {
            let stride = 1usize << (var - WORD_VARS);
            self.words
                .iter()
                .enumerate()
                .filter(|(i, _)| (i & stride != 0) == value)
                .map(|(_, &w)| w)
                .collect()
        } else {
            let shift = if value { 1u32 << var } else { 0 };
            let halves: Vec<u64> = self
                .words
                .iter()
                .map(|&w| words::compress(w >> shift, var))
                .collect();
            if n < WORD_VARS {
                vec![halves[0] & valid_mask(n)]
            } else {
                halves.chunks(2).map(|p| p[0] | p[1] << 32).collect()
            }
        };
        TruthTable { n, words }
    }

    /// The function on `n + 1` inputs that ignores a new variable inserted
    /// at position `var`. Inverse of [`TruthTable::restrict`] on that variable.
    pub fn extend(&self, var: usize) -> Result<TruthTable, TruthTableError> {
        Self::check_arity(self.n + 1)?;
        if var > self.n {
            return Err(TruthTableError::VariableOutOfRange {
                index: var,
                n: self.n + 1,
            });
        }
        let n = self.n + 1;
        let words = if var >= WORD_VARS {
            let bit = var - WORD_VARS;
            let low = (1usize << bit) - 1;
            (0..word_count(n))
                .map(|i| self.words[(i & low) | ((i >> 1) & !low)])
                .collect()
        } else if n <= WORD_VARS {
            vec![words::spread(self.words[0], var) & valid_mask(n)]
        } else {
            self.words
                .iter()
                .flat_map(|&w| [words::spread(w, var), words::spread(w >> 32, var)])
                .collect()
        };
        Ok(TruthTable { n, words })
    }

    /// Replaces `x_var` by its negation.
    pub fn negate_input(&self, var: usize) -> Result<TruthTable, TruthTableError> {
        self.check_var(var)?;
        let words = if var < WORD_VARS {
            self.words.iter().map(|&w| swap_halves(w, var)).collect()
        } else {
            let stride = 1usize << (var - WORD_VARS);
            (0..self.words.len()).map(|i| self.words[i ^ stride]).collect()
        };
        Ok(TruthTable { n: self.n, words })
    }

    /// Re-expresses a function of `vars.len()` inputs as a function of `n`
    /// inputs, its variable `i` becoming `x_{vars[i]}`. `vars` must be
    /// strictly increasing and below `n`.
    pub fn embed(&self, n: usize, vars: &[usize]) -> Result<TruthTable, TruthTableError> {
        Self::check_arity(n)?;
        if vars.len() != self.n {
            return Err(TruthTableError::VariableOutOfRange {
                index: vars.len(),
                n: self.n,
            });
        }
        if let Some(&bad) = vars.iter().find(|&&v| v >= n) {
            return Err(TruthTableError::VariableOutOfRange { index: bad, n });
        }
        assert!(
            vars.windows(2).all(|w| w[0] < w[1]),
            "embedding variables must be strictly increasing"
        );
        let mut table = self.clone();
        let mut next = vars.iter().peekable();
        for pos in 0..n {
            if next.peek() == Some(&&pos) {
                next.next();
            } else {
                table = table.extend(pos)?;
            }
        }
        Ok(table)
    }

    /// Canonical binary text, `b_0` first.
    pub fn to_binary_string(&self) -> String {
        (0..1usize << self.n)
            .map(|i| if self.get(i) { '1' } else { '0' })
            .collect()
    }

    /// Hexadecimal text with entry 0 in the least significant bit of the last digit.
    pub fn to_hex_string(&self) -> String {
        let digits = (1usize << self.n).div_ceil(4);
        (0..digits)
            .rev()
            .map(|d| {
                let base = 4 * d;
                let nibble = (0..4)
                    .filter(|b| base + b < 1usize << self.n && self.get(base + b))
                    .fold(0u32, |acc, b| acc | 1 << b);
                char::from_digit(nibble, 16).unwrap()
            })
            .collect()
    }

    fn zip_words(&self, other: &TruthTable, op: impl Fn(u64, u64) -> u64) -> TruthTable {
        assert_eq!(self.n, other.n, "arity mismatch");
        TruthTable {
            n: self.n,
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(&a, &b)| op(a, b))
                .collect(),
        }
    }
}

impl fmt::Display for TruthTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_binary_string())
    }
}

impl fmt::Debug for TruthTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.n <= 6 {
            write!(f, "TruthTable(n={}, {})", self.n, self.to_binary_string())
        } else {
            write!(f, "TruthTable(n={}, 0x{})", self.n, self.to_hex_string())
        }
    }
}

impl Not for &TruthTable {
    type Output = TruthTable;
    fn not(self) -> TruthTable {
        let mask = valid_mask(self.n);
        TruthTable {
            n: self.n,
            words: self.words.iter().map(|&w| !w & mask).collect(),
        }
    }
}

impl BitAnd for &TruthTable {
    type Output = TruthTable;
    fn bitand(self, rhs: &TruthTable) -> TruthTable {
        self.zip_words(rhs, |a, b| a & b)
    }
}

impl BitOr for &TruthTable {
    type Output = TruthTable;
    fn bitor(self, rhs: &TruthTable) -> TruthTable {
        self.zip_words(rhs, |a, b| a | b)
    }
}

impl BitXor for &TruthTable {
    type Output = TruthTable;
    fn bitxor(self, rhs: &TruthTable) -> TruthTable {
        self.zip_words(rhs, |a, b| a ^ b)
    }
}
