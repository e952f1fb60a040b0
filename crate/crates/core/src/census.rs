//! Brute-force census: classify every (or a random sample of) truth table
//! of a given arity and compare the `(m, k, r)` histogram with the count
//! table.
//!
//! The function space of arity `n <= 5` is enumerated as the integers
//! `0..2^(2^n)`, each integer being the packed output column. Workers own
//! contiguous index ranges and private histograms that are merged at the
//! end, so results do not depend on the worker count.
//!
//! Sampled censuses draw each truth table from its own ChaCha8 stream
//! (`rand_chacha::ChaCha8Rng::seed_from_u64(seed)` with `set_stream(i)`
//! for sample `i`), filling the output words in order with `next_u64` and
//! clearing the unused high bits when `n < 6`.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::io;
use std::path::Path;
use std::thread;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use thiserror::Error;

use crate::enumeration::{total_functions, CellKey, CountTable, DEFAULT_BOUND};
use crate::truthtable::{classify, Classification, TruthTable, MAX_ARITY};

/// Largest arity for a default exhaustive census.
pub const EXHAUSTIVE_MAX_N: usize = 4;
/// Largest arity for the opt-in resumable exhaustive census.
pub const RESUMABLE_MAX_N: usize = 5;

#[derive(Debug, Error)]
pub enum CensusError {
    #[error("exhaustive census is limited to n <= {limit}, got {n}")]
    ArityTooLarge { n: usize, limit: usize },
    #[error("sample count must be at least 1")]
    NoSamples,
    #[error("comparison needs an exhaustive census report")]
    ModeMismatch,
    #[error("count table covers n <= {max_n}, census has n = {n}")]
    TableTooSmall { n: usize, max_n: usize },
    #[error("checkpoint is for n = {found}, expected {expected}")]
    CheckpointArity { expected: usize, found: usize },
    #[error("malformed checkpoint: {0}")]
    Checkpoint(String),
    #[error(transparent)]
    Io(#[from] io::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CensusMode {
    Exhaustive,
    Sampled { samples: u64, seed: u64 },
}

pub type Histogram = BTreeMap<Classification, u64>;

/// A cell where the count formula and the census disagree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub key: CellKey,
    pub formula: BigUint,
    pub census: u64,
}

impl Mismatch {
    pub fn diff(&self) -> BigInt {
        BigInt::from(self.census) - BigInt::from(self.formula.clone())
    }
}

/// Observed vs. exact proportion for one cell of a sampled census.
#[derive(Debug, Clone, PartialEq)]
pub struct SampledCell {
    pub key: CellKey,
    pub observed: u64,
    /// `N(n, m, k, r) / 2^(2^n)`, when the arity is within the table bound.
    pub expected: Option<BigRational>,
    /// Binomial z-score of `observed` under `expected`.
    pub z_score: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CensusReport {
    pub n: usize,
    pub mode: CensusMode,
    pub histogram: Histogram,
    pub total: u64,
    /// Filled for exhaustive censuses.
    pub mismatches: Vec<Mismatch>,
    /// Filled for sampled censuses.
    pub sampled: Vec<SampledCell>,
}

fn key_of(n: usize, c: &Classification) -> CellKey {
    CellKey::new(n, c.m, c.k, c.r)
}

fn merge(into: &mut Histogram, from: Histogram) {
    for (cell, count) in from {
        *into.entry(cell).or_insert(0) += count;
    }
}

fn scan_range(n: usize, start: u64, end: u64) -> Histogram {
    let mut hist = Histogram::new();
    for index in start..end {
        let f = TruthTable::from_words(n, vec![index]).expect("index fits the table");
        *hist.entry(classify(&f)).or_insert(0) += 1;
    }
    hist
}

/// Classifies `start..end` with `workers` threads over contiguous sub-ranges.
fn scan_parallel(n: usize, start: u64, end: u64, workers: usize) -> Histogram {
    let workers = workers.max(1) as u64;
    let len = end - start;
    let step = len.div_ceil(workers).max(1);
    let parts: Vec<Histogram> = thread::scope(|s| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                let lo = (start + w * step).min(end);
                let hi = (lo + step).min(end);
                s.spawn(move || scan_range(n, lo, hi))
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("census worker panicked"))
            .collect()
    });
    let mut hist = Histogram::new();
    for part in parts {
        merge(&mut hist, part);
    }
    hist
}

/// Number of worker threads to use when none is requested.
pub fn default_workers() -> usize {
    thread::available_parallelism().map_or(1, |p| p.get())
}

/// Classifies all `2^(2^n)` functions for `n <= 4` and compares the
/// histogram with the count table.
pub fn census_exhaustive(n: usize, workers: usize) -> Result<CensusReport, CensusError> {
    if n > EXHAUSTIVE_MAX_N {
        return Err(CensusError::ArityTooLarge {
            n,
            limit: EXHAUSTIVE_MAX_N,
        });
    }
    let end = 1u64 << (1u32 << n);
    let histogram = scan_parallel(n, 0, end, workers);
    finish_exhaustive(n, histogram)
}

fn finish_exhaustive(n: usize, histogram: Histogram) -> Result<CensusReport, CensusError> {
    let mut report = CensusReport {
        n,
        mode: CensusMode::Exhaustive,
        total: histogram.values().sum(),
        histogram,
        mismatches: Vec::new(),
        sampled: Vec::new(),
    };
    let table = CountTable::build(n).expect("n is within the table bound");
    report.mismatches = compare(&report, &table)?;
    Ok(report)
}

/// Cell-by-cell comparison of an exhaustive census with `table`.
pub fn compare(report: &CensusReport, table: &CountTable) -> Result<Vec<Mismatch>, CensusError> {
    if report.mode != CensusMode::Exhaustive {
        return Err(CensusError::ModeMismatch);
    }
    if report.n > table.max_n() {
        return Err(CensusError::TableTooSmall {
            n: report.n,
            max_n: table.max_n(),
        });
    }
    let n = report.n;
    let mut out = Vec::new();
    for (key, formula) in table.cells_for(n) {
        let cell = Classification {
            m: key.m,
            k: key.k,
            r: key.r,
        };
        let census = report.histogram.get(&cell).copied().unwrap_or(0);
        if BigUint::from(census) != *formula {
            out.push(Mismatch {
                key: *key,
                formula: formula.clone(),
                census,
            });
        }
    }
    // cells the table does not index at all
    for (cell, &count) in &report.histogram {
        let key = key_of(n, cell);
        if table.cells_for(n).all(|(k, _)| *k != key) {
            out.push(Mismatch {
                key,
                formula: BigUint::default(),
                census: count,
            });
        }
    }
    Ok(out)
}

/// The sampled truth table with index `sample` for `seed`.
pub fn sample_table(n: usize, seed: u64, sample: u64) -> TruthTable {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(sample);
    let words = if n < 6 { 1 } else { 1usize << (n - 6) };
    let mut data: Vec<u64> = (0..words).map(|_| rng.next_u64()).collect();
    if n < 6 {
        data[0] &= (1u64 << (1u32 << n)) - 1;
    }
    TruthTable::from_words(n, data).expect("arity already checked")
}

/// Classifies `samples` uniformly random truth tables of arity `n`.
pub fn census_sampled(
    n: usize,
    samples: u64,
    seed: u64,
    workers: usize,
) -> Result<CensusReport, CensusError> {
    if n > MAX_ARITY {
        return Err(CensusError::ArityTooLarge { n, limit: MAX_ARITY });
    }
    if samples == 0 {
        return Err(CensusError::NoSamples);
    }
    let workers = workers.max(1) as u64;
    let step = samples.div_ceil(workers);
    let parts: Vec<Histogram> = thread::scope(|s| {
        let handles: Vec<_> = (0..workers)
            .map(|w| {
                let lo = (w * step).min(samples);
                let hi = (lo + step).min(samples);
                s.spawn(move || {
                    let mut hist = Histogram::new();
                    for i in lo..hi {
                        *hist.entry(classify(&sample_table(n, seed, i))).or_insert(0) += 1;
                    }
                    hist
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("census worker panicked"))
            .collect()
    });
    let mut histogram = Histogram::new();
    for part in parts {
        merge(&mut histogram, part);
    }

    let table = (n <= DEFAULT_BOUND).then(|| CountTable::build(n).expect("within bound"));
    let mut cells: BTreeMap<CellKey, SampledCell> = BTreeMap::new();
    if let Some(table) = &table {
        let total = BigInt::from(total_functions(n));
        for (key, count) in table.cells_for(n) {
            let p = BigRational::new(BigInt::from(count.clone()), total.clone());
            let observed = histogram
                .get(&Classification {
                    m: key.m,
                    k: key.k,
                    r: key.r,
                })
                .copied()
                .unwrap_or(0);
            cells.insert(
                *key,
                SampledCell {
                    key: *key,
                    observed,
                    z_score: Some(z_score(observed, samples, &p)),
                    expected: Some(p),
                },
            );
        }
    }
    for (cell, &count) in &histogram {
        let key = key_of(n, cell);
        cells.entry(key).or_insert(SampledCell {
            key,
            observed: count,
            expected: table.as_ref().map(|_| BigRational::default()),
            z_score: table.as_ref().map(|_| f64::INFINITY),
        });
    }

    Ok(CensusReport {
        n,
        mode: CensusMode::Sampled { samples, seed },
        total: histogram.values().sum(),
        histogram,
        mismatches: Vec::new(),
        sampled: cells.into_values().collect(),
    })
}

fn z_score(observed: u64, samples: u64, p: &BigRational) -> f64 {
    let p = p.to_f64().unwrap_or(0.0);
    let mean = samples as f64 * p;
    let var = mean * (1.0 - p);
    if var == 0.0 {
        if (observed as f64 - mean).abs() < 0.5 {
            0.0
        } else {
            f64::INFINITY
        }
    } else {
        (observed as f64 - mean) / var.sqrt()
    }
}

impl CensusReport {
    pub fn is_consistent(&self) -> bool {
        self.mismatches.is_empty()
    }

    /// `n,m,k,r,count`
    pub fn histogram_csv(&self) -> String {
        histogram_csv(self.n, &self.histogram)
    }

    /// `n,m,k,r,formula,census,diff` over every cell of the table for `n`.
    pub fn comparison_csv(&self, table: &CountTable) -> String {
        let mut out = String::from("n,m,k,r,formula,census,diff\n");
        for (key, formula) in table.cells_for(self.n) {
            let census = self
                .histogram
                .get(&Classification {
                    m: key.m,
                    k: key.k,
                    r: key.r,
                })
                .copied()
                .unwrap_or(0);
            let diff = BigInt::from(census) - BigInt::from(formula.clone());
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{}",
                key.n, key.m, key.k, key.r, formula, census, diff
            );
        }
        out
    }

    /// Human-readable summary.
    pub fn summary(&self) -> String {
        let mut out = String::new();
        match self.mode {
            CensusMode::Exhaustive => {
                let _ = writeln!(out, "exhaustive census n={} total={}", self.n, self.total);
                if self.mismatches.is_empty() {
                    out.push_str("all cells match\n");
                } else {
                    let _ = writeln!(out, "{} mismatching cells:", self.mismatches.len());
                    for m in &self.mismatches {
                        let _ = writeln!(
                            out,
                            "  (m={}, k={}, r={}) formula={} census={} diff={}",
                            m.key.m,
                            m.key.k,
                            m.key.r,
                            m.formula,
                            m.census,
                            m.diff()
                        );
                    }
                }
            }
            CensusMode::Sampled { samples, seed } => {
                let _ = writeln!(
                    out,
                    "sampled census n={} samples={samples} seed={seed}",
                    self.n
                );
                for c in &self.sampled {
                    let expected = c
                        .expected
                        .as_ref()
                        .and_then(|p| p.to_f64())
                        .map_or("n/a".to_string(), |p| format!("{p:.6e}"));
                    let z = c.z_score.map_or("n/a".to_string(), |z| format!("{z:.3}"));
                    let _ = writeln!(
                        out,
                        "  (m={}, k={}, r={}) observed={} ({:.6e}) expected={expected} z={z}",
                        c.key.m,
                        c.key.k,
                        c.key.r,
                        c.observed,
                        c.observed as f64 / samples as f64
                    );
                }
            }
        }
        out
    }
}

fn histogram_csv(n: usize, histogram: &Histogram) -> String {
    let mut out = String::from("n,m,k,r,count\n");
    for (c, count) in histogram {
        let _ = writeln!(out, "{},{},{},{},{}", n, c.m, c.k, c.r, count);
    }
    out
}

/// Progress of a resumable exhaustive census.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Checkpoint {
    pub n: usize,
    /// First truth-table index not yet classified.
    pub next: u64,
    pub histogram: Histogram,
}

impl Checkpoint {
    pub fn new(n: usize) -> Self {
        Checkpoint {
            n,
            next: 0,
            histogram: Histogram::new(),
        }
    }

    pub fn end(&self) -> u64 {
        1u64 << (1u32 << self.n)
    }

    pub fn is_complete(&self) -> bool {
        self.next >= self.end()
    }

    /// Header lines `n=<n>` and `next=<index>`, then the histogram CSV.
    pub fn to_text(&self) -> String {
        format!(
            "n={}\nnext={}\n{}",
            self.n,
            self.next,
            histogram_csv(self.n, &self.histogram)
        )
    }

    pub fn parse(text: &str) -> Result<Self, CensusError> {
        let bad = |what: &str| CensusError::Checkpoint(what.to_string());
        let mut lines = text.lines();
        let n: usize = lines
            .next()
            .and_then(|l| l.strip_prefix("n="))
            .and_then(|v| v.trim().parse().ok())
            .ok_or_else(|| bad("missing n= header"))?;
        let next: u64 = lines
            .next()
            .and_then(|l| l.strip_prefix("next="))
            .and_then(|v| v.trim().parse().ok())
            .ok_or_else(|| bad("missing next= header"))?;
        if lines.next().map(str::trim) != Some("n,m,k,r,count") {
            return Err(bad("missing histogram header"));
        }
        let mut histogram = Histogram::new();
        for line in lines.filter(|l| !l.trim().is_empty()) {
            let fields: Vec<u64> = line
                .split(',')
                .map(|f| f.trim().parse::<u64>())
                .collect::<Result<_, _>>()
                .map_err(|_| bad(&format!("bad row {line:?}")))?;
            let [row_n, m, k, r, count] = fields[..] else {
                return Err(bad(&format!("bad row {line:?}")));
            };
            if row_n as usize != n {
                return Err(bad(&format!("row for n = {row_n} in a checkpoint for n = {n}")));
            }
            histogram.insert(
                Classification {
                    m: m as usize,
                    k: k as usize,
                    r: r as usize,
                },
                count,
            );
        }
        Ok(Checkpoint { n, next, histogram })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum ResumableOutcome {
    Complete(CensusReport),
    Paused(Checkpoint),
}

/// Exhaustive census for `n <= 5` processed in chunks of `chunk_size`
/// indices. After every chunk the state is written to `state_path`
/// (through a temporary file and rename); an existing state file is
/// resumed. `max_chunks` bounds the work done by this call.
pub fn census_resumable(
    n: usize,
    state_path: &Path,
    chunk_size: u64,
    workers: usize,
    max_chunks: Option<u64>,
) -> Result<ResumableOutcome, CensusError> {
    if n > RESUMABLE_MAX_N {
        return Err(CensusError::ArityTooLarge {
            n,
            limit: RESUMABLE_MAX_N,
        });
    }
    let mut state = if state_path.exists() {
        let state = Checkpoint::parse(&fs::read_to_string(state_path)?)?;
        if state.n != n {
            return Err(CensusError::CheckpointArity {
                expected: n,
                found: state.n,
            });
        }
        state
    } else {
        Checkpoint::new(n)
    };
    let chunk_size = chunk_size.max(1);
    let mut done = 0u64;
    while !state.is_complete() && max_chunks.is_none_or(|limit| done < limit) {
        let hi = state.next.saturating_add(chunk_size).min(state.end());
        let part = scan_parallel(n, state.next, hi, workers);
        merge(&mut state.histogram, part);
        state.next = hi;
        done += 1;
        let tmp = state_path.with_extension("tmp");
        fs::write(&tmp, state.to_text())?;
        fs::rename(&tmp, state_path)?;
    }
    if !state.is_complete() {
        return Ok(ResumableOutcome::Paused(state));
    }
    Ok(ResumableOutcome::Complete(finish_exhaustive(n, state.histogram)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cell(m: usize, k: usize, r: usize) -> Classification {
        Classification { m, k, r }
    }

    #[test]
    fn two_input_histogram() {
        let report = census_exhaustive(2, 2).unwrap();
        let expected: Histogram = [
            (cell(0, 0, 0), 2),
            (cell(1, 1, 1), 4),
            (cell(2, 0, 0), 2),
            (cell(2, 2, 1), 8),
        ]
        .into_iter()
        .collect();
        assert_eq!(report.histogram, expected);
        assert_eq!(report.total, 16);
        assert!(report.is_consistent());
    }

    #[test]
    fn worker_count_does_not_change_result() {
        let a = census_exhaustive(3, 1).unwrap();
        let b = census_exhaustive(3, 7).unwrap();
        assert_eq!(a.histogram, b.histogram);
        let mut c = scan_range(3, 0, 100);
        merge(&mut c, scan_range(3, 100, 256));
        assert_eq!(c, a.histogram);
    }

    #[test]
    fn exhaustive_limit() {
        assert!(matches!(
            census_exhaustive(5, 1),
            Err(CensusError::ArityTooLarge { n: 5, limit: 4 })
        ));
    }

    #[test]
    fn tampered_table_gives_one_mismatch() {
        let report = census_exhaustive(3, 2).unwrap();
        let key = CellKey::new(3, 3, 1, 1);
        let table = CountTable::build(3)
            .unwrap()
            .with_cell(key, BigUint::from(25u32));
        let mismatches = compare(&report, &table).unwrap();
        assert_eq!(mismatches.len(), 1);
        assert_eq!(mismatches[0].key, key);
        assert_eq!(mismatches[0].diff(), BigInt::from(-1));
    }

    #[test]
    fn compare_rejects_sampled_reports() {
        let report = census_sampled(2, 10, 0, 1).unwrap();
        let table = CountTable::build(2).unwrap();
        assert!(matches!(compare(&report, &table), Err(CensusError::ModeMismatch)));
    }

    #[test]
    fn one_input_samples_avoid_empty_cell() {
        let report = census_sampled(1, 4, 0, 1).unwrap();
        assert_eq!(report.total, 4);
        assert!(report
            .histogram
            .keys()
            .all(|c| *c == cell(0, 0, 0) || *c == cell(1, 1, 1)));
    }

    #[test]
    fn sampled_census_is_reproducible() {
        let a = census_sampled(6, 500, 42, 1).unwrap();
        let b = census_sampled(6, 500, 42, 4).unwrap();
        assert_eq!(a, b);
        assert_ne!(sample_table(6, 42, 0), sample_table(6, 43, 0));
        assert_ne!(sample_table(6, 42, 0), sample_table(6, 42, 1));
    }

    #[test]
    fn checkpoint_text_round_trip() {
        let mut cp = Checkpoint::new(3);
        cp.next = 77;
        cp.histogram.insert(cell(3, 3, 1), 5);
        cp.histogram.insert(cell(0, 0, 0), 2);
        assert_eq!(Checkpoint::parse(&cp.to_text()).unwrap(), cp);
        assert!(Checkpoint::parse("n=3\n").is_err());
        assert!(Checkpoint::parse("n=3\nnext=0\nn,m,k,r,count\n4,0,0,0,2\n").is_err());
    }
}
