//! Exact expected costs of the full sort, computed two independent ways:
//! a full-history recurrence over subproblem sizes, and a brute-force
//! average over every permutation of a small input.
//!
//! Both sides work with partitioning-step counters (see
//! [`CostLedger::partitioning_total`]). Those counters depend only on
//! which keys land in the subarray, not on the order of the presorted
//! sample runs a recursive call inherits, so conditioning on subproblem
//! sizes is exact and the expectation obeys
//!
//! ```text
//! E[C_n] = E[T_n] + sum_l sum_j P(size of subproblem l = j) E[C_j]
//! ```
//!
//! for n above the cutoff, with E[C_n] = 0 at or below it (the insertion
//! sort branch performs no partitioning). Counters that include the
//! insertion sort phase have call-type-dependent base cases and are out
//! of scope here; they are validated asymptotically elsewhere.
//!
//! [`CostLedger::partitioning_total`]: crate::sort::CostLedger::partitioning_total

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::cost::{expected_toll, CostMeasure};
use crate::params::PivotParams;
use crate::rational::{binomial, factorial, rat_int, rising, Rational};

/// Probability that one partitioning step of a size-n subarray creates
/// subproblems of sizes exactly j = (j1, j2, j3), exact:
///
/// ```text
/// binom(j1, t1) binom(j2, t2) binom(j3, t3) / binom(n, k)
/// ```
///
/// The law is supported on j1 + j2 + j3 = n - 2 (the two pivots account
/// for the missing positions) and vanishes whenever some j_l < t_l,
/// since a subproblem always keeps its t_l sample elements. Off-support
/// j simply evaluate the binomial product.
pub fn subproblem_prob(n: u64, j: [u64; 3], t: [u32; 3]) -> Rational {
    let k = u64::from(t[0]) + u64::from(t[1]) + u64::from(t[2]) + 2;
    assert!(n >= k, "subarray of size {n} cannot hold a sample of {k}");
    let mut numer = BigInt::from(1);
    for l in 0..3 {
        numer *= binomial(j[l], u64::from(t[l]));
    }
    Rational::new(numer, binomial(n, k))
}

/// Marginal probability that subproblem l of a size-n subarray receives
/// exactly i of the n - k non-sample elements, exact.
///
/// Summing the joint law over the other two classes collapses to
///
/// ```text
/// binom(N, i) (t_l + 1)^rising(i) (k - t_l)^rising(N - i)
///   / (k + 1)^rising(N)                          with N = n - k,
/// ```
///
/// the form the recurrence table consumes: it makes the table O(N_max^2)
/// instead of iterating all compositions.
pub fn marginal_class_prob(n: u64, class: usize, i: u64, t: [u32; 3]) -> Rational {
    let k = u64::from(t[0]) + u64::from(t[1]) + u64::from(t[2]) + 2;
    assert!(n >= k, "subarray of size {n} cannot hold a sample of {k}");
    assert!(class < 3, "class index {class} out of range");
    let big_n = n - k;
    if i > big_n {
        return rat_int(0);
    }
    let tl = u64::from(t[class]);
    let numer = binomial(big_n, i) * rising(tl + 1, i) * rising(k - tl, big_n - i);
    Rational::new(numer, rising(k + 1, big_n))
}

/// Expected partitioning-step counters E[C_n] for every subarray size up
/// to a maximum, exact.
#[derive(Clone, Debug, PartialEq)]
pub struct RecurrenceTable {
    /// Sampling parameters the table was built for.
    pub params: PivotParams,
    /// The partitioning-step counter being accumulated.
    pub measure: CostMeasure,
    /// values[n] = E[C_n], for n = 0..=N_max.
    pub values: Vec<Rational>,
}

impl RecurrenceTable {
    /// Largest size the table covers.
    pub fn max_size(&self) -> u64 {
        (self.values.len() - 1) as u64
    }

    /// E[C_n]. Panics above [`max_size`](Self::max_size).
    pub fn value(&self, n: u64) -> &Rational {
        &self.values[n as usize]
    }
}

/// Builds the expected-cost table bottom-up.
///
/// Sizes at or below the cutoff cost 0; each larger size adds its
/// expected first-step toll to the mixture of smaller entries weighted by
/// [`marginal_class_prob`]. A subproblem of class l holding i non-sample
/// elements has total size i + t_l.
pub fn expected_cost_table(
    n_max: u64,
    params: &PivotParams,
    measure: CostMeasure,
) -> RecurrenceTable {
    let t = params.t();
    let k = u64::from(params.sample_size());
    let cutoff = u64::from(params.cutoff());
    let mut values = vec![rat_int(0); (n_max + 1) as usize];
    let start = cutoff + 1;
    for n in start..=n_max {
        let big_n = n - k;
        let mut expected = expected_toll(params, n, measure)
            .expect("sizes above the cutoff have a first-step toll");
        let denom = Rational::from_integer(rising(k + 1, big_n));
        for tl in t.map(u64::from) {
            // Weight w(i) = binom(N, i) (t_l+1)^rising(i) (k-t_l)^rising(N-i),
            // advanced incrementally; each division is exact.
            let mut w = rising(k - tl, big_n);
            let mut class_sum = rat_int(0);
            for i in 0..=big_n {
                let sub = &values[(i + tl) as usize];
                if !sub.is_zero() {
                    class_sum += sub * Rational::from_integer(w.clone());
                }
                if i < big_n {
                    w = w * (big_n - i) * (tl + 1 + i) / ((i + 1) * (k - tl + big_n - i - 1));
                }
            }
            expected += class_sum / &denom;
        }
        values[n as usize] = expected;
    }
    RecurrenceTable {
        params: *params,
        measure,
        values,
    }
}

/// Errors of the brute-force oracle.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RecurrenceError {
    /// Enumerating n! permutations is only feasible for small n.
    BruteForceTooLarge {
        /// Rejected input size.
        n: u64,
    },
}

impl fmt::Display for RecurrenceError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RecurrenceError::BruteForceTooLarge { n } => {
                write!(f, "brute force enumerates n! inputs; n = {n} exceeds 9")
            }
        }
    }
}

impl core::error::Error for RecurrenceError {}

/// Calls f once for every permutation of 1..=n, each passed as a fresh
/// mutable scratch slice. The callback may reorder its slice freely; the
/// enumeration is not disturbed. n = 0 yields a single empty slice.
pub fn for_each_permutation<F: FnMut(&mut [u64])>(n: usize, mut f: F) {
    let mut master: Vec<u64> = (1..=n as u64).collect();
    let mut scratch = master.clone();
    f(&mut scratch);
    let mut c = vec![0usize; n];
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                master.swap(0, i);
            } else {
                master.swap(c[i], i);
            }
            scratch.copy_from_slice(&master);
            f(&mut scratch);
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
}

/// Exact average of a partitioning-step counter over all n! orderings of
/// n distinct keys, obtained by running the real sort on each one.
///
/// This is the ground truth the recurrence table must match; the match
/// simultaneously exercises the subproblem-size law and the fact that
/// recursive calls see every admissible arrangement equally often.
pub fn brute_force_expected(
    n: u64,
    params: &PivotParams,
    measure: CostMeasure,
) -> Result<Rational, RecurrenceError> {
    if n > 9 {
        return Err(RecurrenceError::BruteForceTooLarge { n });
    }
    let mut total: u64 = 0;
    for_each_permutation(n as usize, |a| {
        let ledger = crate::sort::sort(a, params);
        total += ledger.partitioning_total(measure);
    });
    Ok(Rational::new(BigInt::from(total), factorial(n)))
}
