//! Command-line front end: `classify`, `count`, `census`, `prevalence` and
//! `figures`.
//!
//! [`run`] parses arguments and returns the text to print together with
//! the exit status, so the binary stays a thin wrapper. Exit statuses:
//! 0 success, 1 usage or input error, 2 census/formula mismatch.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::census::{self, CensusReport, ResumableOutcome};
use crate::enumeration::{CellKey, CountTable};
use crate::figures;
use crate::prevalence;
use crate::truthtable::{decompose, TruthTable};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_MISMATCH: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Pretty,
    Csv,
}

#[derive(Debug, Parser)]
#[command(
    name = "canalizing",
    version,
    about = "Exact counts and classification of canalizing Boolean functions"
)]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classify one truth table: essential variables, depth, layers, core.
    Classify {
        #[arg(long = "n")]
        n: usize,
        /// Binary `b_0 b_1 ...` or hexadecimal (`0x` prefix optional).
        #[arg(long)]
        table: String,
        #[arg(long, value_enum, default_value_t = OutputFormat::Pretty)]
        format: OutputFormat,
    },
    /// Emit the count table N(n, m, k, r) as CSV.
    Count {
        #[arg(long, default_value_t = 10)]
        max_n: usize,
        /// Only rows with this n.
        #[arg(long = "n")]
        n: Option<usize>,
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        r: Option<usize>,
        /// Only rows with m = n.
        #[arg(long)]
        nondegenerate: bool,
    },
    /// Classify every (or a sample of) truth table and compare with the formulas.
    Census {
        #[arg(long = "n")]
        n: usize,
        /// Classify this many random tables instead of all of them.
        #[arg(long)]
        samples: Option<u64>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Worker threads (default: available parallelism).
        #[arg(long)]
        workers: Option<usize>,
        /// Opt in to the n = 5 exhaustive census (2^32 functions).
        #[arg(long)]
        allow_n5: bool,
        /// Checkpoint file for the resumable n = 5 census.
        #[arg(long)]
        state: Option<PathBuf>,
        #[arg(long, default_value_t = 1 << 24)]
        chunk_size: u64,
        /// Stop after this many chunks (the checkpoint keeps the progress).
        #[arg(long)]
        max_chunks: Option<u64>,
        /// Also write the histogram CSV here.
        #[arg(long)]
        histogram_out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = OutputFormat::Pretty)]
        format: OutputFormat,
    },
    /// Exact prevalences and log2 fold changes for n = 1..=max_n.
    Prevalence {
        #[arg(long, default_value_t = 5)]
        max_n: usize,
        #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
        format: OutputFormat,
    },
    /// Write the figure CSVs (and optional SVG charts) to a directory.
    Figures {
        #[arg(long, default_value_t = 5)]
        max_n: usize,
        #[arg(long)]
        outdir: PathBuf,
        #[arg(long)]
        svg: bool,
    },
}

/// Text produced by a command and its exit status.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            stdout,
            stderr: String::new(),
            code: EXIT_OK,
        }
    }

    fn usage(message: impl std::fmt::Display) -> Self {
        Outcome {
            stdout: String::new(),
            stderr: format!("error: {message}\n"),
            code: EXIT_USAGE,
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match RunConfig::try_parse_from(args) {
        Ok(config) => execute(config),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            if code == EXIT_OK {
                Outcome::ok(text)
            } else {
                Outcome {
                    stdout: String::new(),
                    stderr: text,
                    code,
                }
            }
        }
    }
}

pub fn execute(config: RunConfig) -> Outcome {
    match config.command {
        Command::Classify { n, table, format } => cmd_classify(n, &table, format),
        Command::Count {
            max_n,
            n,
            m,
            k,
            r,
            nondegenerate,
        } => cmd_count(max_n, |key| {
            n.is_none_or(|v| key.n == v)
                && m.is_none_or(|v| key.m == v)
                && k.is_none_or(|v| key.k == v)
                && r.is_none_or(|v| key.r == v)
                && (!nondegenerate || key.m == key.n)
        }),
        Command::Census {
            n,
            samples,
            seed,
            workers,
            allow_n5,
            state,
            chunk_size,
            max_chunks,
            histogram_out,
            format,
        } => {
            let workers = workers.unwrap_or_else(census::default_workers);
            cmd_census(CensusArgs {
                n,
                samples,
                seed,
                workers,
                allow_n5,
                state,
                chunk_size,
                max_chunks,
                histogram_out,
                format,
            })
        }
        Command::Prevalence { max_n, format } => cmd_prevalence(max_n, format),
        Command::Figures { max_n, outdir, svg } => cmd_figures(max_n, &outdir, svg),
    }
}

pub fn cmd_classify(n: usize, text: &str, format: OutputFormat) -> Outcome {
    let f = match TruthTable::parse(n, text) {
        Ok(f) => f,
        Err(e) => return Outcome::usage(e),
    };
    let d = decompose(&f);
    match format {
        OutputFormat::Pretty => Outcome::ok(format!("{d}\n")),
        OutputFormat::Csv => {
            let c = d.classification();
            let sizes: Vec<String> = d.layer_sizes().iter().map(ToString::to_string).collect();
            Outcome::ok(format!(
                "n,m,k,r,layer_sizes\n{},{},{},{},{}\n",
                n,
                c.m,
                c.k,
                c.r,
                sizes.join(";")
            ))
        }
    }
}

fn build(max_n: usize) -> Result<CountTable, Outcome> {
    CountTable::build(max_n).map_err(Outcome::usage)
}

pub fn cmd_count(max_n: usize, keep: impl FnMut(&CellKey) -> bool) -> Outcome {
    match build(max_n) {
        Ok(table) => Outcome::ok(table.to_csv_filtered(keep)),
        Err(out) => out,
    }
}

#[derive(Debug, Clone)]
pub struct CensusArgs {
    pub n: usize,
    pub samples: Option<u64>,
    pub seed: u64,
    pub workers: usize,
    pub allow_n5: bool,
    pub state: Option<PathBuf>,
    pub chunk_size: u64,
    pub max_chunks: Option<u64>,
    pub histogram_out: Option<PathBuf>,
    pub format: OutputFormat,
}

pub fn cmd_census(args: CensusArgs) -> Outcome {
    let report = if let Some(samples) = args.samples {
        census::census_sampled(args.n, samples, args.seed, args.workers)
    } else if args.n == census::RESUMABLE_MAX_N {
        if !args.allow_n5 {
            return Outcome::usage(
                "the n = 5 exhaustive census classifies 2^32 functions; pass --allow-n5 and --state <file>",
            );
        }
        let Some(state) = &args.state else {
            return Outcome::usage("--allow-n5 requires --state <file> for checkpointing");
        };
        match census::census_resumable(args.n, state, args.chunk_size, args.workers, args.max_chunks) {
            Ok(ResumableOutcome::Complete(report)) => Ok(report),
            Ok(ResumableOutcome::Paused(cp)) => {
                return Outcome::ok(format!(
                    "paused at index {} of {}; state saved to {}\n",
                    cp.next,
                    cp.end(),
                    state.display()
                ))
            }
            Err(e) => Err(e),
        }
    } else if let Some(state) = &args.state {
        match census::census_resumable(args.n, state, args.chunk_size, args.workers, args.max_chunks) {
            Ok(ResumableOutcome::Complete(report)) => Ok(report),
            Ok(ResumableOutcome::Paused(cp)) => {
                return Outcome::ok(format!("paused at index {} of {}\n", cp.next, cp.end()))
            }
            Err(e) => Err(e),
        }
    } else {
        census::census_exhaustive(args.n, args.workers)
    };
    let report = match report {
        Ok(r) => r,
        Err(e) => return Outcome::usage(e),
    };
    if let Some(path) = &args.histogram_out {
        if let Err(e) = fs::write(path, report.histogram_csv()) {
            return Outcome::usage(format!("cannot write {}: {e}", path.display()));
        }
    }
    census_outcome(&report, args.format)
}

fn census_outcome(report: &CensusReport, format: OutputFormat) -> Outcome {
    let stdout = match (report.mode, format) {
        (census::CensusMode::Exhaustive, OutputFormat::Csv) => {
            let table = CountTable::build(report.n).expect("census arity is within the table bound");
            report.comparison_csv(&table)
        }
        (_, OutputFormat::Csv) => report.histogram_csv(),
        (_, OutputFormat::Pretty) => report.summary(),
    };
    Outcome {
        stdout,
        stderr: String::new(),
        code: if report.is_consistent() {
            EXIT_OK
        } else {
            EXIT_MISMATCH
        },
    }
}

pub fn cmd_prevalence(max_n: usize, format: OutputFormat) -> Outcome {
    if max_n == 0 {
        return Outcome::usage(prevalence::PrevalenceError::ZeroArity);
    }
    let table = match build(max_n) {
        Ok(t) => t,
        Err(out) => return out,
    };
    match prevalence::prevalence_series(max_n, &table) {
        Ok(records) => Outcome::ok(match format {
            OutputFormat::Csv => prevalence::to_csv(&records),
            OutputFormat::Pretty => prevalence::to_pretty(&records),
        }),
        Err(e) => Outcome::usage(e),
    }
}

pub fn cmd_figures(max_n: usize, outdir: &std::path::Path, svg: bool) -> Outcome {
    let table = match build(max_n) {
        Ok(t) => t,
        Err(out) => return out,
    };
    match figures::write_figures(max_n, &table, outdir, svg) {
        Ok(paths) => {
            let mut out = String::new();
            for p in paths {
                let _ = writeln!(out, "wrote {}", p.display());
            }
            Outcome::ok(out)
        }
        Err(e) => Outcome::usage(format!("cannot write figures to {}: {e}", outdir.display())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classify_xor() {
        let out = run(["canalizing", "classify", "--n", "2", "--table", "0110"]);
        assert_eq!(out.code, 0);
        assert!(out.stdout.starts_with("m=2 k=0 r=0 (non-canalizing)"));
    }

    #[test]
    fn classify_identity_reports_bidirectional() {
        let out = run(["canalizing", "classify", "--n", "1", "--table", "01"]);
        assert!(out.stdout.starts_with("m=1 k=1 r=1"));
        assert!(out.stdout.contains("layer 1: x1 (a=0 -> b=0), bidirectional"));
    }

    #[test]
    fn parse_errors_exit_one() {
        let out = run(["canalizing", "classify", "--n", "2", "--table", "011"]);
        assert_eq!(out.code, EXIT_USAGE);
        let out = run(["canalizing", "frobnicate"]);
        assert_eq!(out.code, EXIT_USAGE);
        let out = run(["canalizing", "count", "--max-n", "17"]);
        assert_eq!(out.code, EXIT_USAGE);
    }

    #[test]
    fn count_filters() {
        let out = run(["canalizing", "count", "--max-n", "3", "--n", "3", "--k", "1"]);
        assert_eq!(
            out.stdout,
            "n,m,k,r,count\n3,1,1,1,6\n3,2,1,1,0\n3,3,1,1,24\n"
        );
    }

    #[test]
    fn n5_census_requires_opt_in() {
        let out = run(["canalizing", "census", "--n", "5"]);
        assert_eq!(out.code, EXIT_USAGE);
        assert!(out.stderr.contains("--allow-n5"));
        let out = run(["canalizing", "census", "--n", "6"]);
        assert_eq!(out.code, EXIT_USAGE);
    }
}
