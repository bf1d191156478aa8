//! Monte Carlo cost measurement on random permutations.
//!
//! Every trial owns an independent ChaCha12 stream derived from the root
//! seed, the size index, and the trial index, so results are reproducible
//! bit for bit regardless of thread count or scheduling order.

use dpq::sort::sort_with_ledger;
use dpq::{rational_to_f64, CostLedger, CostMeasure, PivotParams};
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rayon::prelude::*;

use crate::config::Settings;
use crate::format::{sig6, Csv};

/// Finalizer from the splitmix64 generator; a cheap bijective scrambler
/// that turns structured stream indices into well-spread seeds.
pub fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e3779b97f4a7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^ (z >> 31)
}

/// Seed for one trial's private stream. The root is mixed before the
/// trial index is added: xor-ing the raw root with a small index would
/// hand neighboring roots the same set of streams in permuted order,
/// which summation cannot tell apart.
pub fn stream_seed(root: u64, size_index: u64, trials: u64, trial: u64) -> u64 {
    let index = size_index.wrapping_mul(trials).wrapping_add(trial);
    splitmix64(splitmix64(root).wrapping_add(index))
}

/// Uniformly random permutation of `0..n` by Fisher-Yates.
pub fn random_permutation(n: u64, seed: u64) -> Vec<u64> {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let mut a: Vec<u64> = (0..n).collect();
    for i in (1..a.len()).rev() {
        let j = (rng.next_u64() % (i as u64 + 1)) as usize;
        a.swap(i, j);
    }
    a
}

/// Sorts `trials` random permutations of length `n` and returns the summed
/// whole-sort counters for every measure, in [`CostMeasure::ALL`] order.
pub fn measure_sums(
    n: u64,
    params: &PivotParams,
    trials: u64,
    root_seed: u64,
    size_index: u64,
) -> [u64; 3] {
    (0..trials)
        .into_par_iter()
        .map(|trial| {
            let mut a = random_permutation(n, stream_seed(root_seed, size_index, trials, trial));
            let mut ledger = CostLedger::new();
            sort_with_ledger(&mut a, params, &mut ledger);
            debug_assert!(a.windows(2).all(|w| w[0] <= w[1]));
            let mut sums = [0u64; 3];
            for (slot, measure) in sums.iter_mut().zip(CostMeasure::ALL) {
                *slot = ledger.total(measure);
            }
            sums
        })
        .reduce(|| [0u64; 3], |a, b| [a[0] + b[0], a[1] + b[1], a[2] + b[2]])
}

/// Leading-term prediction a / H * n ln n for one measure.
pub fn predicted_cost(t: [u32; 3], measure: CostMeasure, n: u64) -> f64 {
    let ratio = rational_to_f64(&dpq::analysis::leading_term(t, measure));
    ratio * n as f64 * (n as f64).ln()
}

/// Runs the configured simulation and renders the result table.
///
/// Columns: `n`, then `<measure>_mean`, `<measure>_predicted`, and
/// `<measure>_relative_gap` for each selected measure, where the gap is
/// `mean / predicted - 1`.
pub fn simulate_csv(settings: &Settings) -> String {
    let mut header = vec!["n".to_string()];
    for measure in &settings.measures {
        header.push(format!("{}_mean", measure.name()));
        header.push(format!("{}_predicted", measure.name()));
        header.push(format!("{}_relative_gap", measure.name()));
    }
    let header_refs: Vec<&str> = header.iter().map(String::as_str).collect();
    let mut csv = Csv::new(&header_refs);

    let sizes = settings
        .sizes
        .clone()
        .unwrap_or_else(|| vec![1_000, 10_000, 100_000]);
    for (size_index, &n) in sizes.iter().enumerate() {
        let sums = measure_sums(
            n,
            &settings.params,
            settings.trials,
            settings.seed,
            size_index as u64,
        );
        let mut row = vec![n.to_string()];
        for &measure in &settings.measures {
            let slot = CostMeasure::ALL
                .iter()
                .position(|m| *m == measure)
                .expect("measure is one of the three");
            let mean = sums[slot] as f64 / settings.trials as f64;
            let predicted = predicted_cost(settings.params.t(), measure, n);
            row.push(sig6(mean));
            row.push(sig6(predicted));
            row.push(sig6(mean / predicted - 1.0));
        }
        csv.row(row);
    }
    csv.finish()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params(t: [u32; 3], cutoff: u32) -> PivotParams {
        PivotParams::new(t, cutoff).unwrap()
    }

    #[test]
    fn splitmix_matches_the_reference_sequence() {
        assert_eq!(splitmix64(0), 0xe220a8397b1dcdaf);
        assert_eq!(splitmix64(1), 0x910a2dec89025cc1);
        assert_eq!(splitmix64(0x0123_4567_89ab_cdef), 0x157a3807a48faa9d);
    }

    #[test]
    fn permutations_are_permutations_and_replay_exactly() {
        let a = random_permutation(100, 7);
        let b = random_permutation(100, 7);
        let c = random_permutation(100, 8);
        assert_eq!(a, b);
        assert_ne!(a, c);
        let mut sorted = a.clone();
        sorted.sort_unstable();
        assert_eq!(sorted, (0..100).collect::<Vec<u64>>());
    }

    #[test]
    fn neighboring_root_seeds_give_different_experiments() {
        let p = params([0, 0, 0], 1);
        let a = measure_sums(100, &p, 10, 1, 0);
        let b = measure_sums(100, &p, 10, 2, 0);
        let c = measure_sums(100, &p, 10, 3, 0);
        assert!(a != b && b != c && a != c);
    }

    #[test]
    fn sums_are_thread_count_independent() {
        let p = params([1, 0, 2], 6);
        let serial = rayon::ThreadPoolBuilder::new()
            .num_threads(1)
            .build()
            .unwrap()
            .install(|| measure_sums(500, &p, 20, 3, 0));
        let parallel = rayon::ThreadPoolBuilder::new()
            .num_threads(4)
            .build()
            .unwrap()
            .install(|| measure_sums(500, &p, 20, 3, 0));
        assert_eq!(serial, parallel);
    }

    #[test]
    fn mean_comparisons_track_the_prediction_at_moderate_size() {
        let p = params([0, 0, 0], 1);
        let sums = measure_sums(10_000, &p, 40, 11, 0);
        let mean = sums[0] as f64 / 40.0;
        let predicted = predicted_cost([0, 0, 0], CostMeasure::Comparisons, 10_000);
        let gap = (mean / predicted - 1.0).abs();
        assert!(gap < 0.15, "mean {mean} vs predicted {predicted}");
    }
}
