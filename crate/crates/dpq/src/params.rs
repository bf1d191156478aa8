//! Sampling parameters and call-site classification.

use core::fmt;

/// Which boundary cells of a subarray arrive presorted.
///
/// The top-level call sees an arbitrary permutation. A left child inherits
/// the t1 sample elements below the lower pivot as a sorted prefix, a
/// middle child the t2 elements between the pivots, and a right child the
/// t3 elements above the upper pivot as a sorted suffix. The sorter uses
/// the tag to skip work an earlier step already paid for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CallType {
    /// Top-level call, nothing presorted.
    Root,
    /// Left recursive call, sorted prefix of length t1.
    Left,
    /// Middle recursive call, sorted prefix of length t2.
    Middle,
    /// Right recursive call, sorted suffix of length t3.
    Right,
}

/// Pivot sampling vector t = (t1, t2, t3) plus the short-subarray cutoff.
///
/// Every partitioning step samples k = t1 + t2 + t3 + 2 elements from
/// fixed cells, the t1 + t2 + 1 leftmost and the t3 + 1 rightmost of the
/// subarray. After the sample is sorted, the (t1 + 1)-st smallest sample
/// element becomes the lower pivot and the (t3 + 1)-st largest the upper
/// pivot. Subarrays with at most `cutoff` elements are insertion sorted
/// instead; `cutoff >= k - 1` guarantees that every partitioned subarray
/// holds a complete sample.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PivotParams {
    t: [u32; 3],
    cutoff: u32,
}

impl PivotParams {
    /// Builds a parameter set, rejecting cutoffs below k - 1.
    pub fn new(t: [u32; 3], cutoff: u32) -> Result<Self, ParamError> {
        let min = t[0] + t[1] + t[2] + 1;
        if cutoff < min {
            return Err(ParamError::CutoffTooSmall { cutoff, min });
        }
        Ok(PivotParams { t, cutoff })
    }

    /// Parameter set with the smallest legal cutoff, k - 1.
    pub fn with_min_cutoff(t: [u32; 3]) -> Self {
        PivotParams {
            t,
            cutoff: t[0] + t[1] + t[2] + 1,
        }
    }

    /// Sampling vector (t1, t2, t3).
    pub fn t(&self) -> [u32; 3] {
        self.t
    }

    /// Sample size k = t1 + t2 + t3 + 2.
    pub fn sample_size(&self) -> u32 {
        self.t[0] + self.t[1] + self.t[2] + 2
    }

    /// Subarrays with at most this many elements are insertion sorted.
    pub fn cutoff(&self) -> u32 {
        self.cutoff
    }
}

impl fmt::Display for PivotParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "t=({},{},{}) M={}",
            self.t[0], self.t[1], self.t[2], self.cutoff
        )
    }
}

/// Parameter validation failure.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParamError {
    /// The cutoff must be at least k - 1 so a partitioned subarray can
    /// hold its complete sample.
    CutoffTooSmall {
        /// Rejected cutoff.
        cutoff: u32,
        /// Smallest legal cutoff for the sampling vector, k - 1.
        min: u32,
    },
}

impl fmt::Display for ParamError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParamError::CutoffTooSmall { cutoff, min } => write!(
                f,
                "cutoff {} is below the sample-size requirement {}",
                cutoff, min
            ),
        }
    }
}

impl core::error::Error for ParamError {}
