//! Closed-form analytical layer: entropies, leading-term coefficients,
//! Beta-function identities, and the shape-function cross-check for the
//! recurrence's asymptotic solution.
//!
//! The expected cost of sorting n uniformly random distinct elements with
//! sampling vector t grows as (a / H) n ln n, where a is the linear-term
//! coefficient of the expected partitioning toll and
//!
//! ```text
//! H(t) = sum_l (t_l + 1) / (k + 1) * (harmonic(k+1) - harmonic(t_l + 1))
//! ```
//!
//! is the discrete entropy of the sampling vector. When t grows
//! proportionally, t_l / k -> tau_l, both pieces converge to continuous
//! counterparts: a*(tau) and the Shannon entropy -sum tau_l ln tau_l.

use core::fmt;

use crate::cost::CostMeasure;
use crate::rational::{binomial, int, rat_int, Rational};

/// Exact harmonic number H_n = 1 + 1/2 + ... + 1/n, with H_0 = 0.
pub fn harmonic(n: u64) -> Rational {
    let mut acc = rat_int(0);
    for i in 1..=n {
        acc += Rational::new(int(1), int(i as i64));
    }
    acc
}

/// Discrete entropy H(t) of a sampling vector, exact.
pub fn discrete_entropy(t: [u32; 3]) -> Rational {
    let k = u64::from(t[0]) + u64::from(t[1]) + u64::from(t[2]) + 2;
    let hk = harmonic(k + 1);
    let mut acc = rat_int(0);
    for tl in t {
        let tl = u64::from(tl);
        let weight = Rational::new(int((tl + 1) as i64), int((k + 1) as i64));
        acc += weight * (hk.clone() - harmonic(tl + 1));
    }
    acc
}

/// Linear-term coefficient a of the expected partitioning toll, exact.
///
/// The expected toll of one step on n elements is a n + O(1); these are
/// the coefficients entering the (a / H) n ln n law.
pub fn cost_coefficient(t: [u32; 3], measure: CostMeasure) -> Rational {
    let t = t.map(i64::from);
    let k = t[0] + t[1] + t[2] + 2;
    let k1 = k + 1;
    let k12 = (k + 1) * (k + 2);
    match measure {
        CostMeasure::Comparisons => {
            rat_int(1)
                + Rational::new(int(t[1] + 1), int(k1))
                + Rational::new(int((2 * t[0] + t[1] + 3) * (t[2] + 1)), int(k12))
        }
        CostMeasure::Swaps => {
            Rational::new(int(t[0] + 1), int(k1))
                + Rational::new(int((t[0] + t[1] + 2) * (t[2] + 1)), int(k12))
        }
        CostMeasure::BytecodeModel => {
            rat_int(10)
                + Rational::new(int(13 * (t[0] + 1) + 5 * (t[1] + 1)), int(k1))
                + Rational::new(
                    int(11 * (t[0] + t[1] + 2) * (t[2] + 1) + (t[0] + 1) * (t[0] + t[1] + 3)),
                    int(k12),
                )
        }
    }
}

/// Coefficient of the n ln n leading term: cost_coefficient / entropy,
/// exact.
pub fn leading_term(t: [u32; 3], measure: CostMeasure) -> Rational {
    cost_coefficient(t, measure) / discrete_entropy(t)
}

/// The full coefficient bundle of a sampling vector.
#[derive(Clone, Debug, PartialEq)]
pub struct CostCoefficients {
    /// Sampling vector the bundle belongs to.
    pub t: [u32; 3],
    /// Toll coefficients for comparisons, swaps, bytecodes, in
    /// [`CostMeasure::ALL`] order.
    pub coefficients: [Rational; 3],
    /// Discrete entropy H(t).
    pub entropy: Rational,
}

impl CostCoefficients {
    /// Toll coefficient of one measure.
    pub fn coefficient(&self, measure: CostMeasure) -> &Rational {
        match measure {
            CostMeasure::Comparisons => &self.coefficients[0],
            CostMeasure::Swaps => &self.coefficients[1],
            CostMeasure::BytecodeModel => &self.coefficients[2],
        }
    }

    /// Leading-term ratio a / H of one measure, exact.
    pub fn ratio(&self, measure: CostMeasure) -> Rational {
        self.coefficient(measure) / &self.entropy
    }
}

/// Computes all coefficients and the entropy of a sampling vector.
pub fn coefficients(t: [u32; 3]) -> CostCoefficients {
    CostCoefficients {
        t,
        coefficients: CostMeasure::ALL.map(|m| cost_coefficient(t, m)),
        entropy: discrete_entropy(t),
    }
}

/// Class probabilities (tau1, tau2, tau3) in the proportional-sampling
/// limit t_l / k -> tau_l.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tau([f64; 3]);

impl Tau {
    /// Validates a probability vector: nonnegative entries summing to 1
    /// within 1e-12.
    pub fn new(tau: [f64; 3]) -> Result<Self, AnalysisError> {
        let sum = tau[0] + tau[1] + tau[2];
        if tau.iter().any(|x| *x < 0.0 || !x.is_finite()) || (sum - 1.0).abs() > 1e-12 {
            return Err(AnalysisError::TauOutsideSimplex { tau });
        }
        Ok(Tau(tau))
    }

    /// The components.
    pub fn get(&self) -> [f64; 3] {
        self.0
    }
}

pub(crate) fn continuous_entropy_raw(tau: [f64; 3]) -> f64 {
    let mut acc = 0.0;
    for x in tau {
        if x > 0.0 {
            acc -= x * libm::log(x);
        }
    }
    acc
}

pub(crate) fn continuous_coefficient_raw(tau: [f64; 3], measure: CostMeasure) -> f64 {
    let [t1, t2, t3] = tau;
    match measure {
        CostMeasure::Comparisons => 1.0 + t2 + (2.0 * t1 + t2) * t3,
        CostMeasure::Swaps => t1 + (t1 + t2) * t3,
        CostMeasure::BytecodeModel => 10.0 + 13.0 * t1 + 5.0 * t2 + (t1 + t2) * (t1 + 11.0 * t3),
    }
}

/// Shannon entropy -sum tau_l ln tau_l with the convention 0 ln 0 = 0.
pub fn continuous_entropy(tau: Tau) -> f64 {
    continuous_entropy_raw(tau.get())
}

/// Continuous limit a*(tau) of the toll coefficients.
pub fn continuous_coefficient(tau: Tau, measure: CostMeasure) -> f64 {
    continuous_coefficient_raw(tau.get(), measure)
}

/// Errors of the analytical layer.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum AnalysisError {
    /// Beta-function parameters must be positive integers.
    NonPositiveBetaParameter,
    /// A probability vector must be nonnegative and sum to 1.
    TauOutsideSimplex {
        /// Rejected vector.
        tau: [f64; 3],
    },
}

impl fmt::Display for AnalysisError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AnalysisError::NonPositiveBetaParameter => {
                f.write_str("beta parameters must be positive integers")
            }
            AnalysisError::TauOutsideSimplex { tau } => write!(
                f,
                "({}, {}, {}) is not a probability vector",
                tau[0], tau[1], tau[2]
            ),
        }
    }
}

impl core::error::Error for AnalysisError {}

/// Multidimensional Beta function at positive integer parameters:
/// B(a) = prod (a_i - 1)! / (sum a_i - 1)!, exact.
pub fn beta(alpha: &[u64]) -> Result<Rational, AnalysisError> {
    if alpha.is_empty() || alpha.contains(&0) {
        return Err(AnalysisError::NonPositiveBetaParameter);
    }
    let mut numer = int(1);
    let mut total = 0u64;
    for a in alpha {
        numer *= crate::rational::factorial(a - 1);
        total += a;
    }
    Ok(Rational::new(numer, crate::rational::factorial(total - 1)))
}

/// Beta integral with one logarithmic factor:
/// B_ln(a1, a2) = B(a1, a2) (harmonic(a1 + a2 - 1) - harmonic(a1 - 1)),
/// exact for positive integer parameters.
pub fn beta_ln(a1: u64, a2: u64) -> Result<Rational, AnalysisError> {
    let b = beta(&[a1, a2])?;
    Ok(b * (harmonic(a1 + a2 - 1) - harmonic(a1 - 1)))
}

/// Evaluates the two shape-function integrals of the recurrence's
/// asymptotic solution in closed form.
///
/// The weight w(z) = sum_l (k - t_l) binomial(k, t_l) z^(t_l) (1-z)^(k -
/// t_l - 1) is the density governing subproblem sizes. Its zeroth moment
/// identity H = 1 - sum_l (k - t_l) binomial(k, t_l) B(t_l + 2, k - t_l)
/// must vanish, and its logarithmic moment H~ = sum_l (k - t_l)
/// binomial(k, t_l) B_ln(t_l + 2, k - t_l) must equal the discrete
/// entropy; both are returned exactly.
pub fn cmt_check(t: [u32; 3]) -> (Rational, Rational) {
    let k = u64::from(t[0]) + u64::from(t[1]) + u64::from(t[2]) + 2;
    let mut h = rat_int(1);
    let mut h_tilde = rat_int(0);
    for tl in t {
        let tl = u64::from(tl);
        let weight = Rational::from_integer(int((k - tl) as i64) * binomial(k, tl));
        h -= weight.clone() * beta(&[tl + 2, k - tl]).unwrap();
        h_tilde += weight * beta_ln(tl + 2, k - tl).unwrap();
    }
    (h, h_tilde)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn harmonic_numbers() {
        assert_eq!(harmonic(0), rat_int(0));
        assert_eq!(harmonic(1), rat_int(1));
        assert_eq!(harmonic(3), rat(11, 6));
    }

    #[test]
    fn entropy_spot_values_and_symmetry() {
        assert_eq!(discrete_entropy([0, 0, 0]), rat(5, 6));
        assert_eq!(discrete_entropy([1, 1, 1]), rat(19, 20));
        assert_eq!(discrete_entropy([2, 0, 1]), discrete_entropy([1, 0, 2]));
        assert_eq!(discrete_entropy([2, 0, 1]), discrete_entropy([0, 2, 1]));
    }

    #[test]
    fn coefficient_spot_values() {
        assert_eq!(
            cost_coefficient([0, 0, 0], CostMeasure::Comparisons),
            rat(19, 12)
        );
        assert_eq!(cost_coefficient([0, 0, 0], CostMeasure::Swaps), rat(1, 2));
        assert_eq!(
            cost_coefficient([1, 1, 1], CostMeasure::Comparisons),
            rat(34, 21)
        );
        assert_eq!(
            cost_coefficient([0, 0, 0], CostMeasure::BytecodeModel),
            rat(217, 12)
        );
    }

    #[test]
    fn coefficients_are_asymmetric_in_t() {
        // Entropy is symmetric but the toll coefficients are not.
        let a = cost_coefficient([2, 0, 0], CostMeasure::Comparisons);
        let b = cost_coefficient([0, 0, 2], CostMeasure::Comparisons);
        assert_ne!(a, b);
    }

    #[test]
    #[allow(clippy::approx_constant)]
    fn leading_term_spot_values() {
        assert_eq!(
            leading_term([0, 0, 0], CostMeasure::Comparisons),
            rat(19, 10)
        );
        assert_eq!(leading_term([0, 0, 0], CostMeasure::Swaps), rat(3, 5));
        let c =
            crate::rational::rational_to_f64(&leading_term([1, 1, 1], CostMeasure::Comparisons));
        assert!((c - 1.7043).abs() < 5e-5);
        let b =
            crate::rational::rational_to_f64(&leading_term([0, 1, 2], CostMeasure::BytecodeModel));
        assert!((b - 18.791).abs() < 5e-4);
        let s = crate::rational::rational_to_f64(&leading_term([0, 3, 0], CostMeasure::Swaps));
        assert!((s - 0.3926).abs() < 5e-5);
    }

    #[test]
    fn bundle_matches_pieces() {
        let bundle = coefficients([1, 2, 3]);
        for m in CostMeasure::ALL {
            assert_eq!(*bundle.coefficient(m), cost_coefficient([1, 2, 3], m));
            assert_eq!(bundle.ratio(m), leading_term([1, 2, 3], m));
        }
    }

    #[test]
    fn continuous_spot_values() {
        let center = Tau::new([1.0 / 3.0; 3]).unwrap();
        assert!((continuous_entropy(center) - 1.0986122886681098).abs() < 1e-12);
        assert!((continuous_entropy(Tau::new([1.0, 0.0, 0.0]).unwrap())).abs() < 1e-12);
        assert!(
            (continuous_entropy(Tau::new([0.5, 0.5, 0.0]).unwrap()) - core::f64::consts::LN_2)
                .abs()
                < 1e-12
        );
        assert_eq!(
            continuous_coefficient(Tau::new([0.0, 0.0, 1.0]).unwrap(), CostMeasure::Swaps),
            0.0
        );
        let ratio =
            continuous_coefficient(center, CostMeasure::Comparisons) / continuous_entropy(center);
        assert!((ratio - 1.5171).abs() < 5e-5);
        let bc =
            continuous_coefficient(center, CostMeasure::BytecodeModel) / continuous_entropy(center);
        assert!((bc - 16.991).abs() < 5e-4);
        assert!(Tau::new([0.5, 0.6, -0.1]).is_err());
        assert!(Tau::new([0.5, 0.4, 0.2]).is_err());
    }

    #[test]
    fn entropy_approaches_its_continuous_limit() {
        // t = (m, m, m): H -> ln 3 from below as m grows.
        let ln3 = 1.0986122886681098;
        let mut last_gap = f64::INFINITY;
        for m in [1u32, 3, 10, 30, 100] {
            let h = crate::rational::rational_to_f64(&discrete_entropy([m, m, m]));
            let gap = (h - ln3).abs();
            assert!(gap < last_gap);
            last_gap = gap;
        }
        assert!(last_gap < 0.02);
    }

    #[test]
    fn coefficient_approaches_its_continuous_limit() {
        let k = 1000u32;
        let tau = [0.2, 0.3, 0.5];
        // Round tau * k to a valid t for sample size k.
        let t1 = (tau[0] * k as f64) as u32;
        let t2 = (tau[1] * k as f64) as u32;
        let t3 = k - 2 - t1 - t2;
        for m in CostMeasure::ALL {
            let exact = crate::rational::rational_to_f64(&cost_coefficient([t1, t2, t3], m));
            let limit = continuous_coefficient_raw(tau, m);
            assert!(
                (exact - limit).abs() / limit < 0.01,
                "{m}: {exact} vs {limit}"
            );
        }
    }

    #[test]
    fn beta_values() {
        assert_eq!(beta(&[1, 1]).unwrap(), rat_int(1));
        assert_eq!(beta(&[2, 3]).unwrap(), rat(1, 12));
        assert_eq!(beta_ln(1, 1).unwrap(), rat_int(1));
        assert!(beta(&[2, 0]).is_err());
        assert!(beta(&[]).is_err());
    }

    #[test]
    fn shape_function_identities_spot_checks() {
        for t in [[0, 0, 0], [1, 1, 1], [3, 0, 2]] {
            let (h, h_tilde) = cmt_check(t);
            assert_eq!(h, rat_int(0), "t={:?}", t);
            assert_eq!(h_tilde, discrete_entropy(t), "t={:?}", t);
        }
    }
}
