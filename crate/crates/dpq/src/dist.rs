//! Distributional building blocks behind the expected-cost formulas:
//! pivot spacings, the class sizes they induce, and the exact mixed
//! moments Monte Carlo validators compare against.
//!
//! Sorting the k sample elements splits the unit interval at the two
//! pivot values into spacings D = (D1, D2, D3), which follow a Dirichlet
//! law with parameters t + 1. Conditional on D, the class sizes I of the
//! n - k ordinary elements are multinomial with n - k trials and
//! probabilities D. The samplers here reproduce that two-stage process
//! with an injected 64-bit generator, and the moment helpers give the
//! corresponding exact values.

use alloc::vec::Vec;

use num_bigint::BigInt;
use rand_core::RngCore;

use crate::rational::{rising, Rational};

/// Uniform draw from [0, 1) with 53 random bits.
pub fn uniform_f64<R: RngCore>(rng: &mut R) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / 9007199254740992.0)
}

/// Relative spacings the two pivots cut from the unit interval.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Spacings(pub [f64; 3]);

/// Draws one spacings triple: k independent uniforms are sorted and the
/// order statistics at the pivot ranks t1 + 1 and t1 + t2 + 2 become the
/// split points. The result is Dirichlet(t + 1)-distributed.
pub fn sample_spacings<R: RngCore>(t: [u32; 3], rng: &mut R) -> Spacings {
    let k = (t[0] + t[1] + t[2] + 2) as usize;
    let mut sample: Vec<f64> = (0..k).map(|_| uniform_f64(rng)).collect();
    sample.sort_unstable_by(f64::total_cmp);
    let p = sample[t[0] as usize];
    let q = sample[(t[0] + t[1] + 1) as usize];
    Spacings([p, q - p, 1.0 - q])
}

/// Exact mixed moment E[prod_l X_l^(m_l, rising)] of a Dirichlet vector
/// with positive integer parameters alpha:
///
/// ```text
/// prod_l rising(alpha_l, m_l) / rising(alpha_1 + ... + alpha_r, m_1 + ... + m_r)
/// ```
pub fn dirichlet_mixed_moment(alpha: &[u64], m: &[u64]) -> Rational {
    assert_eq!(alpha.len(), m.len(), "one exponent per parameter");
    assert!(alpha.iter().all(|a| *a >= 1), "parameters must be positive");
    let mut numer = BigInt::from(1);
    let mut total_alpha = 0u64;
    let mut total_m = 0u64;
    for (a, exp) in alpha.iter().zip(m) {
        numer *= rising(*a, *exp);
        total_alpha += a;
        total_m += exp;
    }
    Rational::new(numer, rising(total_alpha, total_m))
}

fn pow_u64(x: f64, mut e: u64) -> f64 {
    let mut acc = 1.0;
    let mut base = x;
    while e > 0 {
        if e & 1 == 1 {
            acc *= base;
        }
        base *= base;
        e >>= 1;
    }
    acc
}

/// Mixed factorial moment E[prod_l I_l^(m_l, falling)] of a multinomial
/// vector with n trials and cell probabilities p:
///
/// ```text
/// falling(n, m_1 + ... + m_r) * prod_l p_l^(m_l)
/// ```
pub fn multinomial_factorial_moment(n: u64, p: &[f64], m: &[u64]) -> f64 {
    assert_eq!(p.len(), m.len(), "one exponent per cell");
    let total_m: u64 = m.iter().sum();
    let mut value = 1.0;
    for i in 0..total_m {
        value *= (n - i) as f64;
    }
    for (prob, exp) in p.iter().zip(m) {
        value *= pow_u64(*prob, *exp);
    }
    value
}

/// Draws one class-size triple I for a subarray of n elements: spacings
/// first, then n - k categorical trials. The components sum to n - k.
pub fn sample_partition_sizes<R: RngCore>(n: u64, t: [u32; 3], rng: &mut R) -> [u64; 3] {
    let k = u64::from(t[0] + t[1] + t[2] + 2);
    assert!(n >= k, "subarray of size {n} cannot hold a sample of {k}");
    let Spacings(d) = sample_spacings(t, rng);
    let mut counts = [0u64; 3];
    for _ in 0..(n - k) {
        let u = uniform_f64(rng);
        let class = if u < d[0] {
            0
        } else if u < d[0] + d[1] {
            1
        } else {
            2
        };
        counts[class] += 1;
    }
    counts
}
