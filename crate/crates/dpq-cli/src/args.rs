//! Command-line interface definition.
//!
//! Every tuning flag is global and optional. Values resolve in three
//! layers: built-in defaults, then a `--config` file, then explicit flags,
//! with later layers winning.

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use dpq::CostMeasure;

/// Dual-pivot quicksort analysis harness.
#[derive(Debug, Parser)]
#[command(name = "dpq", version, about)]
pub struct Cli {
    /// Configuration file with `key=value` lines; flags override it.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,

    /// Pivot-sampling parameter as three comma-separated integers.
    #[arg(long, global = true, value_name = "T1,T2,T3", value_parser = parse_triple)]
    pub t: Option<Triple>,

    /// Recursion cutoff: subarrays of length at most this are sorted by
    /// insertion sort.
    #[arg(long, global = true, value_name = "M")]
    pub cutoff: Option<u32>,

    /// Sample size for parameter enumeration (table, optimize).
    #[arg(long, global = true, value_name = "K")]
    pub k: Option<u32>,

    /// Cost measure; may be repeated to select several.
    #[arg(long = "measure", global = true, value_name = "NAME")]
    pub measure: Vec<MeasureArg>,

    /// Input sizes as comma-separated integers.
    #[arg(long, global = true, value_name = "N1,N2,...", value_parser = parse_sizes)]
    pub sizes: Option<SizeList>,

    /// Number of random inputs per size.
    #[arg(long, global = true, value_name = "COUNT")]
    pub trials: Option<u64>,

    /// Root seed for all pseudo-random streams.
    #[arg(long, global = true, value_name = "SEED")]
    pub seed: Option<u64>,

    /// Write primary output to this file instead of stdout.
    #[arg(long, global = true, value_name = "FILE")]
    pub out: Option<PathBuf>,

    /// Write an SVG rendering alongside the primary output (contour).
    #[arg(long, global = true, value_name = "FILE")]
    pub svg: Option<PathBuf>,

    /// Grid resolution for contour evaluation.
    #[arg(long = "grid-step", global = true, value_name = "STEP")]
    pub grid_step: Option<f64>,

    /// Worker thread count; defaults to the number of cores.
    #[arg(long, global = true, value_name = "THREADS")]
    pub parallel: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print exact and decimal cost coefficients, entropy, and ratios for
    /// one parameter choice.
    Analyze,
    /// Emit the leading-term coefficient grid over all parameters with the
    /// configured sample size as CSV.
    Table,
    /// Sort random permutations and compare measured costs against the
    /// leading-term prediction, as CSV.
    Simulate,
    /// Evaluate the exact expected-cost recurrence over a range of sizes,
    /// as CSV of exact rationals.
    Recurrence,
    /// Search for cost-minimizing parameters, discrete (with --k) or
    /// continuous (without).
    Optimize,
    /// Evaluate the continuous cost ratio over the parameter simplex as
    /// CSV, optionally rendering an SVG heat map.
    Contour,
    /// Run the self-check suites and report one line per suite.
    Verify {
        /// Run only suites whose name contains this substring.
        #[arg(long, value_name = "NAME")]
        suite: Option<String>,

        /// Deliberately corrupt the step-cost accounting to demonstrate
        /// that the checks can fail.
        #[arg(long, hide = true)]
        corrupt_tolls: bool,
    },
}

/// Cost measure spelled as a flag value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum MeasureArg {
    Comparisons,
    Swaps,
    Bytecodes,
}

impl MeasureArg {
    pub fn to_measure(self) -> CostMeasure {
        match self {
            MeasureArg::Comparisons => CostMeasure::Comparisons,
            MeasureArg::Swaps => CostMeasure::Swaps,
            MeasureArg::Bytecodes => CostMeasure::BytecodeModel,
        }
    }
}

/// Newtypes so clap treats each list as one flag value rather than
/// accumulating elements across occurrences.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Triple(pub [u32; 3]);

#[derive(Debug, Clone)]
pub struct SizeList(pub Vec<u64>);

pub fn parse_triple(raw: &str) -> Result<Triple, String> {
    let parts: Vec<&str> = raw.split(',').collect();
    if parts.len() != 3 {
        return Err(format!(
            "expected three comma-separated values, got {}",
            parts.len()
        ));
    }
    let mut t = [0u32; 3];
    for (slot, part) in t.iter_mut().zip(&parts) {
        *slot = part
            .trim()
            .parse::<u32>()
            .map_err(|e| format!("invalid component {part:?}: {e}"))?;
    }
    Ok(Triple(t))
}

pub fn parse_sizes(raw: &str) -> Result<SizeList, String> {
    let sizes = raw
        .split(',')
        .map(|p| {
            p.trim()
                .parse::<u64>()
                .map_err(|e| format!("invalid size {p:?}: {e}"))
        })
        .collect::<Result<Vec<u64>, String>>()?;
    if sizes.is_empty() || sizes.contains(&0) {
        return Err("sizes must be positive".to_string());
    }
    Ok(SizeList(sizes))
}
