//! Dual-pivot quicksort with parametric pivot sampling and cost
//! instrumentation.
//!
//! Each partitioning step works on a subarray laid out as
//!
//! ```text
//! left                                                          right
//! [ t1+t2+1 sample cells | n - k ordinary elements | t3+1 sample cells ]
//! ```
//!
//! and proceeds in three phases:
//!
//! 1. Sort the k sample cells in place across the gap, skipping the
//!    prefix or suffix the [`CallType`] guarantees to be presorted.
//! 2. Take the element at `left + t1` as the lower pivot p and the one at
//!    `right - t3` as the upper pivot q, then partition the ordinary range
//!    into elements below p, between the pivots, and above q.
//! 3. Rotate pivots and sampled-out cells into their final blocks with
//!    t2 + 2 swaps and recurse on the three class ranges.
//!
//! Sampled-out elements never enter the partitioning loop, so every
//! recursive call again sees a uniformly random permutation of its
//! ordinary elements. Each child is tagged with the [`CallType`] telling
//! it which of its boundary cells arrive presorted.

use alloc::vec::Vec;
use core::fmt;

use crate::params::{CallType, PivotParams};

/// Observables and direct operation counts of one partitioning step.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct StepStats {
    /// Subarray length, sample included.
    pub n_step: u64,
    /// Sample size in effect for the step.
    pub k: u32,
    /// Ordinary elements below the lower pivot, between the pivots, and
    /// above the upper pivot.
    pub i: [u64; 3],
    /// Large ordinary elements first examined by the k pointer.
    pub l_at_k: u64,
    /// Small ordinary elements first examined by the k pointer.
    pub s_at_k: u64,
    /// Small ordinary elements first examined by the g pointer.
    pub s_at_g: u64,
    /// 1 when the scan pointers meet on a large element, which costs one
    /// extra comparison pair; 0 otherwise.
    pub delta: u8,
    /// Key comparisons the partitioning loop performed.
    pub comparisons: u64,
    /// Swaps the partitioning loop performed.
    pub swaps: u64,
}

/// Operation counts accumulated over one sort call.
#[derive(Clone, Debug, Default)]
pub struct CostLedger {
    /// Key comparisons across all phases.
    pub comparisons: u64,
    /// Element swaps: partitioning swaps plus the t2 + 2 pivot placement
    /// swaps after each step. Insertion sorting moves elements by single
    /// writes and contributes no swaps.
    pub swaps: u64,
    /// Key comparisons of the partitioning loops alone.
    pub partition_comparisons: u64,
    /// Swaps of the partitioning loops alone.
    pub partition_swaps: u64,
    /// Key comparisons spent sorting samples.
    pub sample_comparisons: u64,
    /// Key comparisons of insertion sort on short subarrays.
    pub insertion_comparisons: u64,
    /// Abstract instruction count of the partitioning phase, summed over
    /// steps: 10 n + 13 I1 + 5 I2 + 11 (l@K - delta) + s@K.
    pub bytecode_model: u64,
    /// One record per partitioning step, in execution order, when
    /// recording is enabled.
    pub steps: Vec<StepStats>,
    record_steps: bool,
}

impl CostLedger {
    /// Ledger keeping aggregate counters only.
    pub fn new() -> Self {
        CostLedger::default()
    }

    /// Ledger that additionally records per-step statistics.
    pub fn recording() -> Self {
        CostLedger {
            record_steps: true,
            ..CostLedger::default()
        }
    }

    /// Counter accumulated across the whole sort for one measure:
    /// all comparisons, all swaps, or the bytecode model.
    pub fn total(&self, measure: crate::cost::CostMeasure) -> u64 {
        match measure {
            crate::cost::CostMeasure::Comparisons => self.comparisons,
            crate::cost::CostMeasure::Swaps => self.swaps,
            crate::cost::CostMeasure::BytecodeModel => self.bytecode_model,
        }
    }

    /// Counter accumulated inside the partitioning steps alone; excludes
    /// sample sorting, insertion sort, and pivot placement. These are the
    /// counters whose expectation the recurrence layer reproduces exactly.
    pub fn partitioning_total(&self, measure: crate::cost::CostMeasure) -> u64 {
        match measure {
            crate::cost::CostMeasure::Comparisons => self.partition_comparisons,
            crate::cost::CostMeasure::Swaps => self.partition_swaps,
            crate::cost::CostMeasure::BytecodeModel => self.bytecode_model,
        }
    }

    fn note_step(&mut self, stats: StepStats) {
        self.comparisons += stats.comparisons;
        self.partition_comparisons += stats.comparisons;
        self.swaps += stats.swaps;
        self.partition_swaps += stats.swaps;
        self.bytecode_model += 10 * stats.n_step
            + 13 * stats.i[0]
            + 5 * stats.i[1]
            + 11 * (stats.l_at_k - u64::from(stats.delta))
            + stats.s_at_k;
        if self.record_steps {
            self.steps.push(stats);
        }
    }
}

/// Which end of a range holds the presorted run.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    /// Sorted prefix; insertion proceeds left to right.
    Left,
    /// Sorted suffix; insertion proceeds right to left.
    Right,
}

/// Comparison and write counts of the standalone sorting helpers. A write
/// is one element moving one cell; self-placements are free.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SortCounts {
    /// Key comparisons performed.
    pub comparisons: u64,
    /// Element movements performed.
    pub writes: u64,
}

/// Errors of the standalone insertion sort and sample sort helpers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SortError {
    /// The presorted run length `s` must satisfy 1 <= s <= limit.
    PrefixOutOfRange {
        /// Rejected run length.
        s: usize,
        /// Largest allowed run length for the call.
        limit: usize,
    },
    /// The slice is shorter than the sample it is supposed to hold.
    SampleDoesNotFit {
        /// Slice length.
        len: usize,
        /// Required sample size k.
        k: usize,
    },
}

impl fmt::Display for SortError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SortError::PrefixOutOfRange { s, limit } => {
                write!(f, "presorted run {} outside 1..={}", s, limit)
            }
            SortError::SampleDoesNotFit { len, k } => {
                write!(f, "slice of {} cannot hold a sample of {}", len, k)
            }
        }
    }
}

impl core::error::Error for SortError {}

/// Insertion sorts the cells `map(lo..=hi)` ascending, assuming the cells
/// `map(lo..lo+s)` are already sorted among themselves. Elements move by
/// adjacent swaps, which performs exactly the comparisons of the classic
/// shift loop; writes are reported in the shift model.
fn ins_left_mapped<T: Ord>(
    a: &mut [T],
    lo: i64,
    hi: i64,
    s: i64,
    map: impl Fn(i64) -> usize,
) -> SortCounts {
    let mut counts = SortCounts::default();
    let mut i = lo + s;
    while i <= hi {
        let mut j = i;
        let mut moved = false;
        while j > lo {
            counts.comparisons += 1;
            if a[map(j)] < a[map(j - 1)] {
                a.swap(map(j), map(j - 1));
                counts.writes += 1;
                moved = true;
                j -= 1;
            } else {
                break;
            }
        }
        if moved {
            counts.writes += 1;
        }
        i += 1;
    }
    counts
}

/// Mirror image of [`ins_left_mapped`]: the cells `map(hi-s+1..=hi)` are
/// already sorted and insertion proceeds right to left.
fn ins_right_mapped<T: Ord>(
    a: &mut [T],
    lo: i64,
    hi: i64,
    s: i64,
    map: impl Fn(i64) -> usize,
) -> SortCounts {
    let mut counts = SortCounts::default();
    let mut i = hi - s;
    while i >= lo {
        let mut j = i;
        let mut moved = false;
        while j < hi {
            counts.comparisons += 1;
            if a[map(j)] > a[map(j + 1)] {
                a.swap(map(j), map(j + 1));
                counts.writes += 1;
                moved = true;
                j += 1;
            } else {
                break;
            }
        }
        if moved {
            counts.writes += 1;
        }
        i -= 1;
    }
    counts
}

fn identity(i: i64) -> usize {
    i as usize
}

/// Insertion sorts `a` ascending given that its first (`Left`) or last
/// (`Right`) `s` elements are already sorted among themselves; those `s`
/// outer iterations are skipped.
///
/// Rejects `s` outside `1..=a.len()`.
pub fn insertion_sort<T: Ord>(
    a: &mut [T],
    s: usize,
    dir: Direction,
) -> Result<SortCounts, SortError> {
    if s < 1 || s > a.len() {
        return Err(SortError::PrefixOutOfRange { s, limit: a.len() });
    }
    let hi = a.len() as i64 - 1;
    Ok(match dir {
        Direction::Left => ins_left_mapped(a, 0, hi, s as i64, identity),
        Direction::Right => ins_right_mapped(a, 0, hi, s as i64, identity),
    })
}

/// Sorts the k sample cells of `a`, the t1 + t2 + 1 leftmost and the
/// t3 + 1 rightmost positions, across the ordinary middle; ordinary cells
/// are left untouched. `s` sample cells arrive presorted: a prefix of the
/// left part (`Left`) or a suffix of the right part (`Right`).
///
/// Rejects slices shorter than k and `s` outside `1..=t1+t2+1` (`Left`)
/// or `1..=t3+1` (`Right`).
pub fn sort_sample<T: Ord>(
    a: &mut [T],
    t: [u32; 3],
    s: usize,
    dir: Direction,
) -> Result<SortCounts, SortError> {
    let k = (t[0] + t[1] + t[2] + 2) as usize;
    if a.len() < k {
        return Err(SortError::SampleDoesNotFit { len: a.len(), k });
    }
    let limit = match dir {
        Direction::Left => (t[0] + t[1] + 1) as usize,
        Direction::Right => (t[2] + 1) as usize,
    };
    if s < 1 || s > limit {
        return Err(SortError::PrefixOutOfRange { s, limit });
    }
    Ok(sort_sample_cells(
        a,
        0,
        a.len() as i64 - 1,
        [t[0] as i64, t[1] as i64, t[2] as i64],
        s as i64,
        dir,
    ))
}

/// Shared sample-sort core: insertion sort over the k virtual sample
/// positions, where positions past the left part are shifted over the
/// ordinary gap.
fn sort_sample_cells<T: Ord>(
    a: &mut [T],
    left: i64,
    right: i64,
    t: [i64; 3],
    s: i64,
    dir: Direction,
) -> SortCounts {
    let k = t[0] + t[1] + t[2] + 2;
    let gap = (right - left + 1) - k;
    let split = left + t[0] + t[1];
    let map = move |i: i64| (if i > split { i + gap } else { i }) as usize;
    match dir {
        Direction::Left => ins_left_mapped(a, left, left + k - 1, s, map),
        Direction::Right => ins_right_mapped(a, left, left + k - 1, s, map),
    }
}

/// Partitions `a[lo..=hi]` by the pivot values at `p_idx` and `q_idx`.
///
/// Both pivot cells must lie outside `lo..=hi` with `a[p_idx] <=
/// a[q_idx]`; they are read but never moved. Returns `(ip, iq, stats)`
/// such that afterwards `a[j] < p` for `lo <= j <= ip`, `p <= a[j] <= q`
/// for `ip < j < iq`, and `a[j] >= q` for `iq <= j <= hi`. Indices are
/// signed because `ip` is `lo - 1` when no element is below p; an empty
/// range returns `(lo - 1, lo)` with zeroed statistics.
///
/// `sample_size` only annotates the returned [`StepStats`]; `n_step` is
/// reported as the range length plus `sample_size`.
pub fn partition<T: Ord>(
    a: &mut [T],
    lo: i64,
    hi: i64,
    p_idx: usize,
    q_idx: usize,
    sample_size: u32,
) -> (i64, i64, StepStats) {
    let mut stats = StepStats {
        n_step: (hi - lo + 1).max(0) as u64 + u64::from(sample_size),
        k: sample_size,
        ..StepStats::default()
    };
    let mut l = lo;
    let mut g = hi;
    let mut k = lo;
    while k <= g {
        stats.comparisons += 1;
        if a[k as usize] < a[p_idx] {
            stats.s_at_k += 1;
            a.swap(k as usize, l as usize);
            stats.swaps += 1;
            l += 1;
        } else {
            stats.comparisons += 1;
            if a[k as usize] >= a[q_idx] {
                stats.l_at_k += 1;
                loop {
                    stats.comparisons += 1;
                    if a[g as usize] > a[q_idx] {
                        if k < g {
                            g -= 1;
                        } else {
                            stats.delta = 1;
                            break;
                        }
                    } else {
                        break;
                    }
                }
                stats.comparisons += 1;
                if a[g as usize] >= a[p_idx] {
                    a.swap(k as usize, g as usize);
                    stats.swaps += 1;
                } else {
                    stats.s_at_g += 1;
                    a.swap(k as usize, g as usize);
                    a.swap(k as usize, l as usize);
                    stats.swaps += 2;
                    l += 1;
                }
                g -= 1;
            }
        }
        k += 1;
    }
    l -= 1;
    g += 1;
    stats.i = [(l - lo + 1) as u64, (g - l - 1) as u64, (hi - g + 1) as u64];
    (l, g, stats)
}

fn presorted_run(call: CallType, t: [i64; 3]) -> i64 {
    match call {
        CallType::Root => 1,
        CallType::Left => t[0].max(1),
        CallType::Middle => t[1].max(1),
        CallType::Right => t[2].max(1),
    }
}

/// Executes one step of the sorter on `a[left..=right]`: either the whole
/// range is insertion sorted (when its length is at most the cutoff) and
/// `None` is returned, or the sample is sorted, the range partitioned,
/// pivots and sampled-out cells rotated into place, and `Some((ip, iq))`
/// returned. The three child ranges are then `left..=ip-t2-1` (left call),
/// `ip-t2+1..=iq-1` (middle call), and `iq+1..=right` (right call), with
/// the pivots at `ip - t2` and `iq` already final.
///
/// `call` tells the step which boundary cells arrived presorted.
pub fn partition_step<T: Ord>(
    a: &mut [T],
    left: i64,
    right: i64,
    call: CallType,
    params: &PivotParams,
    ledger: &mut CostLedger,
) -> Option<(i64, i64)> {
    let t = params.t().map(i64::from);
    let s = presorted_run(call, t);
    if right - left < i64::from(params.cutoff()) {
        let len = right - left + 1;
        let run = s.min(len);
        let counts = match call {
            CallType::Right => ins_right_mapped(a, left, right, run, identity),
            _ => ins_left_mapped(a, left, right, run, identity),
        };
        ledger.comparisons += counts.comparisons;
        ledger.insertion_comparisons += counts.comparisons;
        return None;
    }
    let dir = match call {
        CallType::Right => Direction::Right,
        _ => Direction::Left,
    };
    let counts = sort_sample_cells(a, left, right, t, s, dir);
    ledger.comparisons += counts.comparisons;
    ledger.sample_comparisons += counts.comparisons;

    let p_idx = (left + t[0]) as usize;
    let q_idx = (right - t[2]) as usize;
    let (ip, iq, stats) = partition(
        a,
        left + t[0] + t[1] + 1,
        right - t[2] - 1,
        p_idx,
        q_idx,
        params.sample_size(),
    );
    debug_assert_eq!(stats.n_step, (right - left + 1) as u64);
    ledger.note_step(stats);

    let mut j = t[1];
    while j >= 0 {
        a.swap((left + t[0] + j) as usize, (ip - t[1] + j) as usize);
        ledger.swaps += 1;
        j -= 1;
    }
    a.swap(iq as usize, (right - t[2]) as usize);
    ledger.swaps += 1;
    Some((ip, iq))
}

/// Sorts `a` ascending and returns a ledger with per-step statistics.
///
/// Keys may contain duplicates; the order is still correct, but the cost
/// model is calibrated for distinct keys.
pub fn sort<T: Ord>(a: &mut [T], params: &PivotParams) -> CostLedger {
    let mut ledger = CostLedger::recording();
    sort_with_ledger(a, params, &mut ledger);
    ledger
}

/// Sorts `a` ascending, accumulating costs into a caller-provided ledger.
/// Per-step statistics are kept only if the ledger was created with
/// [`CostLedger::recording`].
pub fn sort_with_ledger<T: Ord>(a: &mut [T], params: &PivotParams, ledger: &mut CostLedger) {
    let t2 = i64::from(params.t()[1]);
    let mut stack: Vec<(i64, i64, CallType)> = Vec::new();
    stack.push((0, a.len() as i64 - 1, CallType::Root));
    while let Some((left, right, call)) = stack.pop() {
        if right <= left {
            continue;
        }
        if let Some((ip, iq)) = partition_step(a, left, right, call, params, ledger) {
            stack.push((left, ip - t2 - 1, CallType::Left));
            stack.push((ip - t2 + 1, iq - 1, CallType::Middle));
            stack.push((iq + 1, right, CallType::Right));
        }
    }
}
