//! Cost measures: per-step tolls from observed statistics and their exact
//! expectations over uniformly random inputs.
//!
//! For a partitioning step on n elements with sample size k, writing
//! N = n - k for the ordinary elements and (I1, I2, I3) for their class
//! counts, the tolls are
//!
//! ```text
//! comparisons = N + I2 + l@K + s@G + 2 delta
//! swaps       = I1 + l@K
//! bytecodes   = 10 n + 13 I1 + 5 I2 + 11 (l@K - delta) + s@K
//! ```
//!
//! The comparison and swap lines are exact identities of the partitioning
//! loop, checked per step in the test suites. The bytecode line is an
//! abstract instruction model whose observable realization agrees with
//! its closed-form expectation; it carries no per-step identity.

use core::fmt;

use crate::params::PivotParams;
use crate::rational::{int, rat_int, Rational};
use crate::sort::StepStats;

/// The three instrumented cost measures.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CostMeasure {
    /// Key comparisons.
    Comparisons,
    /// Element swaps.
    Swaps,
    /// Abstract instruction count of the partitioning loop.
    BytecodeModel,
}

impl CostMeasure {
    /// All measures in display order.
    pub const ALL: [CostMeasure; 3] = [
        CostMeasure::Comparisons,
        CostMeasure::Swaps,
        CostMeasure::BytecodeModel,
    ];

    /// Lower-case display name, also used by the CLI.
    pub fn name(self) -> &'static str {
        match self {
            CostMeasure::Comparisons => "comparisons",
            CostMeasure::Swaps => "swaps",
            CostMeasure::BytecodeModel => "bytecodes",
        }
    }
}

impl fmt::Display for CostMeasure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Evaluates the toll formula of `measure` on one step's observables.
pub fn toll_from_stats(stats: &StepStats, measure: CostMeasure) -> u64 {
    let n_ord = stats.n_step - u64::from(stats.k);
    let delta = u64::from(stats.delta);
    match measure {
        CostMeasure::Comparisons => n_ord + stats.i[1] + stats.l_at_k + stats.s_at_g + 2 * delta,
        CostMeasure::Swaps => stats.i[0] + stats.l_at_k,
        CostMeasure::BytecodeModel => {
            10 * stats.n_step
                + 13 * stats.i[0]
                + 5 * stats.i[1]
                + 11 * (stats.l_at_k - delta)
                + stats.s_at_k
        }
    }
}

/// Exact expectations of the per-step observables for a uniformly random
/// arrangement of N = n - k ordinary elements.
#[derive(Clone, Debug, PartialEq)]
pub struct ExpectationPrimitives {
    /// E[I_j], the expected class sizes: (t_j + 1) N / (k + 1).
    pub class_size: [Rational; 3],
    /// E[delta] = (t3 + 1) / (k + 1), the chance that the pointers meet
    /// on a large element.
    pub bernoulli: Rational,
    /// E[l@K] - E[delta]: (t1 + t2 + 2)(t3 + 1)(N - 1) / ((k+1)(k+2)).
    pub hyp_large_at_k: Rational,
    /// E[s@G]: (t1 + 1)(t3 + 1)(N - 1) / ((k+1)(k+2)).
    pub hyp_small_at_g: Rational,
    /// E[s@K]: (t1 + 1)(t1 + t2 + 3)(N - 1) / ((k+1)(k+2)) + (t1+1)/(k+1).
    pub hyp_small_at_k: Rational,
}

/// Computes the expectation primitives for n elements under `params`.
///
/// Requires n >= k. At n = k the hypergeometric-style terms are zero and
/// the Bernoulli line keeps its constant value, although no partitioning
/// work remains.
pub fn expectation_primitives(params: &PivotParams, n: u64) -> ExpectationPrimitives {
    let t = params.t().map(u64::from);
    let k = u64::from(params.sample_size());
    assert!(n >= k, "need at least a full sample: n={} k={}", n, k);
    let n_ord = n - k;
    let k1 = int((k + 1) as i64);
    let k12 = int(((k + 1) * (k + 2)) as i64);
    let pair = |num: u64| Rational::new(int(num as i64), k1.clone());
    let hyp = |factor: u64| {
        if n_ord == 0 {
            rat_int(0)
        } else {
            Rational::new(int((factor * (n_ord - 1)) as i64), k12.clone())
        }
    };
    ExpectationPrimitives {
        class_size: [
            pair((t[0] + 1) * n_ord),
            pair((t[1] + 1) * n_ord),
            pair((t[2] + 1) * n_ord),
        ],
        bernoulli: pair(t[2] + 1),
        hyp_large_at_k: hyp((t[0] + t[1] + 2) * (t[2] + 1)),
        hyp_small_at_g: hyp((t[0] + 1) * (t[2] + 1)),
        hyp_small_at_k: hyp((t[0] + 1) * (t[0] + t[1] + 3))
            + if n_ord == 0 {
                rat_int(0)
            } else {
                pair(t[0] + 1)
            },
    }
}

/// Errors of the expected-toll computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CostError {
    /// No partitioning step happens at or below the cutoff.
    BelowCutoff {
        /// Requested subarray size.
        n: u64,
        /// Cutoff of the parameter set.
        cutoff: u32,
    },
}

impl fmt::Display for CostError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CostError::BelowCutoff { n, cutoff } => write!(
                f,
                "no partitioning step on {} elements with cutoff {}",
                n, cutoff
            ),
        }
    }
}

impl core::error::Error for CostError {}

/// Exact expected toll of the first partitioning step on n uniformly
/// random distinct elements.
///
/// Fails for n at or below the cutoff, where no step happens. At n = k
/// the partitioning loop never runs: comparisons and swaps are zero and
/// the bytecode model keeps only its 10 n term.
pub fn expected_toll(
    params: &PivotParams,
    n: u64,
    measure: CostMeasure,
) -> Result<Rational, CostError> {
    if n <= u64::from(params.cutoff()) {
        return Err(CostError::BelowCutoff {
            n,
            cutoff: params.cutoff(),
        });
    }
    let k = u64::from(params.sample_size());
    let n_ord = n - k;
    if n_ord == 0 {
        return Ok(match measure {
            CostMeasure::BytecodeModel => rat_int((10 * n) as i64),
            _ => rat_int(0),
        });
    }
    let prim = expectation_primitives(params, n);
    Ok(match measure {
        CostMeasure::Comparisons => {
            rat_int(n_ord as i64)
                + &prim.class_size[1]
                + &prim.hyp_large_at_k
                + &prim.hyp_small_at_g
                + rat_int(3) * &prim.bernoulli
        }
        CostMeasure::Swaps => prim.class_size[0].clone() + &prim.hyp_large_at_k + &prim.bernoulli,
        CostMeasure::BytecodeModel => {
            rat_int((10 * n) as i64)
                + rat_int(13) * &prim.class_size[0]
                + rat_int(5) * &prim.class_size[1]
                + rat_int(11) * &prim.hyp_large_at_k
                + &prim.hyp_small_at_k
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn stats(n_step: u64, k: u32, i: [u64; 3], l_at_k: u64, s_at_g: u64, delta: u8) -> StepStats {
        StepStats {
            n_step,
            k,
            i,
            l_at_k,
            s_at_g,
            delta,
            ..StepStats::default()
        }
    }

    #[test]
    fn toll_formula_spot_values() {
        let s = stats(5, 2, [0, 1, 0], 0, 0, 0);
        assert_eq!(toll_from_stats(&s, CostMeasure::Comparisons), 4);

        let s = stats(7, 2, [0, 0, 0], 0, 0, 0);
        assert_eq!(toll_from_stats(&s, CostMeasure::Comparisons), 5);
        assert_eq!(toll_from_stats(&s, CostMeasure::Swaps), 0);

        let s = stats(5, 2, [2, 0, 1], 1, 1, 1);
        assert_eq!(toll_from_stats(&s, CostMeasure::Swaps), 3);
    }

    #[test]
    fn expected_toll_closed_forms_for_unsampled_pivots() {
        // t = (0,0,0): comparisons (19n - 29) / 12, swaps (3n - 5) / 6,
        // bytecodes (217n - 215) / 12.
        let p = PivotParams::new([0, 0, 0], 1).unwrap();
        for n in [3u64, 4, 10, 57, 1000] {
            let c = expected_toll(&p, n, CostMeasure::Comparisons).unwrap();
            assert_eq!(c, rat(19 * n as i64 - 29, 12), "n={}", n);
            let s = expected_toll(&p, n, CostMeasure::Swaps).unwrap();
            assert_eq!(s, rat(3 * n as i64 - 5, 6), "n={}", n);
            let b = expected_toll(&p, n, CostMeasure::BytecodeModel).unwrap();
            assert_eq!(b, rat(217 * n as i64 - 215, 12), "n={}", n);
        }
    }

    #[test]
    fn expected_toll_degenerates_at_full_sample() {
        let p = PivotParams::with_min_cutoff([1, 1, 1]);
        assert_eq!(
            expected_toll(&p, 5, CostMeasure::Comparisons).unwrap(),
            rat_int(0)
        );
        assert_eq!(
            expected_toll(&p, 5, CostMeasure::Swaps).unwrap(),
            rat_int(0)
        );
        assert_eq!(
            expected_toll(&p, 5, CostMeasure::BytecodeModel).unwrap(),
            rat_int(50)
        );
        assert_eq!(
            expected_toll(&p, 4, CostMeasure::Comparisons),
            Err(CostError::BelowCutoff { n: 4, cutoff: 4 })
        );
    }

    #[test]
    fn primitive_spot_values() {
        let p = PivotParams::new([0, 0, 0], 1).unwrap();
        let prim = expectation_primitives(&p, 20);
        assert_eq!(prim.class_size[0], rat(18, 3));
        assert_eq!(prim.bernoulli, rat(1, 3));
        assert_eq!(prim.hyp_large_at_k, rat(2 * 17, 12));
        assert_eq!(prim.hyp_small_at_g, rat(17, 12));
    }

    #[test]
    fn toll_slope_equals_the_analysis_coefficient() {
        // The expected toll is affine in n once the partition loop runs, so
        // its first difference is exactly the linear-term coefficient.
        for k in 2..=10u32 {
            let budget = k - 2;
            for t1 in 0..=budget {
                for t2 in 0..=(budget - t1) {
                    let t = [t1, t2, budget - t1 - t2];
                    let p = PivotParams::with_min_cutoff(t);
                    let n = u64::from(k) + 5;
                    for m in CostMeasure::ALL {
                        let slope =
                            expected_toll(&p, n + 1, m).unwrap() - expected_toll(&p, n, m).unwrap();
                        assert_eq!(
                            slope,
                            crate::analysis::cost_coefficient(t, m),
                            "t={t:?} {m}"
                        );
                    }
                }
            }
        }
    }
}
