//! Exact rational arithmetic helpers shared by the analytical modules.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Arbitrary-precision fraction, always in lowest terms with a positive
/// denominator.
pub type Rational = num_rational::BigRational;

pub(crate) fn int(x: i64) -> BigInt {
    BigInt::from(x)
}

#[cfg(test)]
pub(crate) fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(int(numer), int(denom))
}

pub(crate) fn rat_int(x: i64) -> Rational {
    Rational::from_integer(int(x))
}

/// n! as a big integer.
pub(crate) fn factorial(n: u64) -> BigInt {
    let mut acc = BigInt::one();
    for i in 2..=n {
        acc *= int(i as i64);
    }
    acc
}

/// Binomial coefficient, 0 when r > n.
pub(crate) fn binomial(n: u64, r: u64) -> BigInt {
    if r > n {
        return BigInt::zero();
    }
    num_integer::binomial(int(n as i64), int(r as i64))
}

/// Rising factorial base (base + 1) ... (base + len - 1).
pub(crate) fn rising(base: u64, len: u64) -> BigInt {
    let mut acc = BigInt::one();
    for i in 0..len {
        acc *= int((base + i) as i64);
    }
    acc
}

/// Rounds a rational to the nearest `f64`, safe for operands whose
/// numerator and denominator are individually too large for `f64`.
///
/// The fraction is scaled by 2^64, divided in integer arithmetic, and
/// scaled back, which keeps the relative error at f64 rounding level for
/// every magnitude this crate produces.
pub fn rational_to_f64(r: &Rational) -> f64 {
    if r.is_zero() {
        return 0.0;
    }
    let negative = r.is_negative();
    let scaled: BigInt = (r.numer().abs() << 64u32) / r.denom();
    let value = scaled.to_f64().unwrap_or(f64::INFINITY) / 18446744073709551616.0;
    if negative {
        -value
    } else {
        value
    }
}
