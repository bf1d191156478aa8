//! Exhaustive check of the randomness-preservation design: over all n!
//! inputs, the ordinary (non-sample) part of each recursive subarray
//! takes every relative order equally often. The analysis relies on this
//! conditional uniformity; it holds because partitioning only ever moves
//! whole elements and never inspects the sorted sample runs.

use std::collections::BTreeMap;

use dpq::params::{CallType, PivotParams};
use dpq::recurrence::for_each_permutation;
use dpq::sort::{partition_step, CostLedger};

fn rank_pattern(v: &[u64]) -> Vec<u8> {
    let mut sorted: Vec<u64> = v.to_vec();
    sorted.sort_unstable();
    v.iter()
        .map(|x| sorted.iter().position(|y| y == x).unwrap() as u8)
        .collect()
}

fn factorial(n: usize) -> u64 {
    (1..=n as u64).product()
}

#[test]
fn subarray_orders_are_equally_likely() {
    let configs: [([u32; 3], u64); 6] = [
        ([0, 0, 0], 6),
        ([1, 0, 0], 6),
        ([0, 1, 0], 6),
        ([0, 0, 1], 6),
        ([0, 0, 0], 7),
        ([1, 1, 1], 7),
    ];
    for (t, n) in configs {
        let params = PivotParams::with_min_cutoff(t);
        let t = t.map(|x| x as i64);
        // (class, ordinary-region pattern) -> occurrences.
        let mut histogram: BTreeMap<(u8, Vec<u8>), u64> = BTreeMap::new();
        for_each_permutation(n as usize, |a| {
            let mut ledger = CostLedger::new();
            let (ip, iq) = partition_step(a, 0, n as i64 - 1, CallType::Root, &params, &mut ledger)
                .expect("n exceeds the cutoff");
            let ranges = [
                (t[0], ip - t[1] - 1),
                (ip - t[1] + 1 + t[1], iq - 1),
                (iq + 1, n as i64 - 1 - t[2]),
            ];
            for (class, (lo, hi)) in ranges.into_iter().enumerate() {
                let region = if hi < lo {
                    &[][..]
                } else {
                    &a[lo as usize..=hi as usize]
                };
                *histogram
                    .entry((class as u8, rank_pattern(region)))
                    .or_insert(0) += 1;
            }
        });
        for class in 0..3u8 {
            let mut by_len: BTreeMap<usize, Vec<u64>> = BTreeMap::new();
            for ((c, pattern), count) in &histogram {
                if *c == class {
                    by_len.entry(pattern.len()).or_default().push(*count);
                }
            }
            for (len, counts) in by_len {
                assert_eq!(
                    counts.len() as u64,
                    factorial(len),
                    "t={t:?} n={n} class {class}: some order of length {len} never occurs"
                );
                assert!(
                    counts.iter().all(|c| *c == counts[0]),
                    "t={t:?} n={n} class {class} length {len}: biased orders {counts:?}"
                );
            }
        }
    }
}
