//! Search for cost-optimal sampling parameters: exhaustive ranking of all
//! discrete vectors at a fixed sample size, and derivative-free
//! minimization of the continuous limit over the probability simplex.

use alloc::vec::Vec;

use crate::analysis::{continuous_coefficient_raw, continuous_entropy_raw, leading_term};
use crate::cost::CostMeasure;
use crate::rational::Rational;

/// One row of the discrete ranking.
#[derive(Clone, Debug, PartialEq)]
pub struct RankedParams {
    /// Sampling vector, t1 + t2 + t3 = k - 2.
    pub t: [u32; 3],
    /// Its leading-term ratio a / H, exact.
    pub value: Rational,
}

/// Ranks every sampling vector of sample size k by the n ln n coefficient
/// of the chosen measure, best first. Ties prefer the lexicographically
/// smallest vector. The list has k (k - 1) / 2 entries, one per vector.
pub fn discrete_optimum(k: u32, measure: CostMeasure) -> Vec<RankedParams> {
    assert!(k >= 2, "sample size must be at least 2");
    let budget = k - 2;
    let mut ranking = Vec::with_capacity((k * (k - 1) / 2) as usize);
    for t1 in 0..=budget {
        for t2 in 0..=(budget - t1) {
            let t = [t1, t2, budget - t1 - t2];
            ranking.push(RankedParams {
                t,
                value: leading_term(t, measure),
            });
        }
    }
    ranking.sort_by(|a, b| a.value.cmp(&b.value).then(a.t.cmp(&b.t)));
    ranking
}

/// Minimizer of the continuous leading-term ratio over the closed
/// simplex.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Optimum {
    /// Minimizing class probabilities.
    pub tau: [f64; 3],
    /// The objective re-evaluated at `tau`.
    pub value: f64,
    /// Measure that was minimized.
    pub measure: CostMeasure,
    /// True iff some component of `tau` is below 1e-6, meaning the
    /// minimum sits on the simplex boundary.
    pub boundary: bool,
}

/// Objective in simplex coordinates (tau3 implied). Outside the simplex
/// the value is +inf. Where the entropy vanishes the ratio is +inf
/// unless the coefficient vanishes too, which happens for swaps at two
/// vertices; those points genuinely cost nothing per element.
fn objective(measure: CostMeasure, x: [f64; 2]) -> f64 {
    let t3 = 1.0 - x[0] - x[1];
    if x[0] < 0.0 || x[1] < 0.0 || t3 < 0.0 {
        return f64::INFINITY;
    }
    let tau = [x[0], x[1], t3];
    let h = continuous_entropy_raw(tau);
    let a = continuous_coefficient_raw(tau, measure);
    if h <= 1e-12 {
        if a <= 1e-12 {
            0.0
        } else {
            f64::INFINITY
        }
    } else {
        a / h
    }
}

fn add(a: [f64; 2], b: [f64; 2], scale: f64) -> [f64; 2] {
    [a[0] + scale * b[0], a[1] + scale * b[1]]
}

fn diff(a: [f64; 2], b: [f64; 2]) -> [f64; 2] {
    [a[0] - b[0], a[1] - b[1]]
}

fn diameter(p: &[[f64; 2]; 3]) -> f64 {
    let mut d: f64 = 0.0;
    for i in 0..3 {
        for j in (i + 1)..3 {
            let g = diff(p[i], p[j]);
            d = d.max(libm::sqrt(g[0] * g[0] + g[1] * g[1]));
        }
    }
    d
}

/// One Nelder-Mead descent from a fixed starting point, returning the
/// best vertex found.
fn descend(measure: CostMeasure, start: [f64; 2], tolerance: f64) -> ([f64; 2], f64) {
    let h = 0.15;
    let mut pts = [start, add(start, [h, 0.0], 1.0), add(start, [0.0, h], 1.0)];
    let mut vals = pts.map(|p| objective(measure, p));
    for _ in 0..1_000 {
        // Order best to worst.
        let mut idx = [0, 1, 2];
        idx.sort_by(|a, b| vals[*a].total_cmp(&vals[*b]));
        pts = [pts[idx[0]], pts[idx[1]], pts[idx[2]]];
        vals = [vals[idx[0]], vals[idx[1]], vals[idx[2]]];
        if diameter(&pts) < tolerance {
            break;
        }
        let centroid = [(pts[0][0] + pts[1][0]) / 2.0, (pts[0][1] + pts[1][1]) / 2.0];
        let reflected = add(centroid, diff(centroid, pts[2]), 1.0);
        let fr = objective(measure, reflected);
        if fr < vals[0] {
            let expanded = add(centroid, diff(centroid, pts[2]), 2.0);
            let fe = objective(measure, expanded);
            if fe < fr {
                pts[2] = expanded;
                vals[2] = fe;
            } else {
                pts[2] = reflected;
                vals[2] = fr;
            }
        } else if fr < vals[1] {
            pts[2] = reflected;
            vals[2] = fr;
        } else {
            let contracted = if fr < vals[2] {
                add(centroid, diff(reflected, centroid), 0.5)
            } else {
                add(centroid, diff(pts[2], centroid), 0.5)
            };
            let fc = objective(measure, contracted);
            if fc < vals[2].min(fr) {
                pts[2] = contracted;
                vals[2] = fc;
            } else {
                for i in 1..3 {
                    pts[i] = add(pts[0], diff(pts[i], pts[0]), 0.5);
                    vals[i] = objective(measure, pts[i]);
                }
            }
        }
    }
    let mut best = 0;
    for i in 1..3 {
        if vals[i] < vals[best] {
            best = i;
        }
    }
    (pts[best], vals[best])
}

/// Minimizes the continuous ratio a*(tau) / H*(tau) over the closed
/// simplex.
///
/// Runs Nelder-Mead from four deterministic starts and additionally
/// evaluates the vertices, edge midpoints, and center exactly, so
/// boundary minima are found even though the descent cannot settle on a
/// point where the objective is discontinuous.
pub fn continuous_optimum(measure: CostMeasure, tolerance: f64) -> Optimum {
    assert!(
        tolerance >= 1e-8,
        "tolerance below floating-point resolution"
    );
    let candidates = [
        [1.0, 0.0],
        [0.0, 1.0],
        [0.0, 0.0],
        [0.5, 0.5],
        [0.5, 0.0],
        [0.0, 0.5],
        [1.0 / 3.0, 1.0 / 3.0],
    ];
    let mut best: ([f64; 2], f64) = (candidates[0], objective(measure, candidates[0]));
    for c in &candidates[1..] {
        let v = objective(measure, *c);
        if v < best.1 {
            best = (*c, v);
        }
    }
    let starts = [[1.0 / 3.0, 1.0 / 3.0], [0.8, 0.1], [0.1, 0.8], [0.1, 0.1]];
    for s in starts {
        let (p, v) = descend(measure, s, tolerance);
        if v < best.1 {
            best = (p, v);
        }
    }
    let (x, _) = best;
    let tau = [x[0].max(0.0), x[1].max(0.0), (1.0 - x[0] - x[1]).max(0.0)];
    Optimum {
        tau,
        value: objective(measure, [tau[0], tau[1]]),
        measure,
        boundary: tau.iter().any(|c| *c < 1e-6),
    }
}

/// Percentage changes of one sampling vector against a baseline, all for
/// the comparisons measure.
#[derive(Clone, Debug, PartialEq)]
pub struct RelativeCell {
    /// Sampling vector of this cell.
    pub t: [u32; 3],
    /// Change of 1 / H, in percent.
    pub inv_entropy_pct: f64,
    /// Change of the toll coefficient a, in percent.
    pub coefficient_pct: f64,
    /// Change of the ratio a / H, in percent.
    pub ratio_pct: f64,
}

fn percent(value: &Rational, baseline: &Rational) -> f64 {
    crate::rational::rational_to_f64(
        &((value / baseline - Rational::from_integer(1.into()))
            * Rational::from_integer(100.into())),
    )
}

/// Evaluates every sampling vector of the baseline's sample size against
/// the baseline, as percentage changes of 1 / H, of the comparison
/// coefficient a, and of their ratio. Cells iterate in lexicographic
/// (t1, t2) order.
pub fn relative_table(k: u32, baseline: [u32; 3]) -> Vec<RelativeCell> {
    assert!(k >= 2, "sample size must be at least 2");
    assert_eq!(
        baseline[0] + baseline[1] + baseline[2],
        k - 2,
        "baseline does not have sample size {k}"
    );
    let base_entropy = crate::analysis::discrete_entropy(baseline);
    let base_coeff = crate::analysis::cost_coefficient(baseline, CostMeasure::Comparisons);
    let base_ratio = &base_coeff / &base_entropy;
    let budget = k - 2;
    let mut cells = Vec::with_capacity((k * (k - 1) / 2) as usize);
    for t1 in 0..=budget {
        for t2 in 0..=(budget - t1) {
            let t = [t1, t2, budget - t1 - t2];
            let entropy = crate::analysis::discrete_entropy(t);
            let coeff = crate::analysis::cost_coefficient(t, CostMeasure::Comparisons);
            cells.push(RelativeCell {
                t,
                // 1/H grows when H shrinks, so the baseline and cell swap roles.
                inv_entropy_pct: percent(&base_entropy, &entropy),
                coefficient_pct: percent(&coeff, &base_coeff),
                ratio_pct: percent(&(&coeff / &entropy), &base_ratio),
            });
        }
    }
    cells
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rational_to_f64};

    #[test]
    fn ranking_enumerates_every_vector() {
        for k in 2..=12 {
            let ranking = discrete_optimum(k, CostMeasure::Comparisons);
            assert_eq!(ranking.len(), (k * (k - 1) / 2) as usize);
            for row in &ranking {
                assert_eq!(row.t[0] + row.t[1] + row.t[2], k - 2);
            }
            for pair in ranking.windows(2) {
                assert!(pair[0].value <= pair[1].value);
            }
        }
    }

    #[test]
    #[allow(clippy::approx_constant)]
    fn sample_size_five_winners() {
        let c = discrete_optimum(5, CostMeasure::Comparisons);
        assert_eq!(c[0].t, [1, 1, 1]);
        assert_eq!(c[0].value, rat(680, 399));
        assert!((rational_to_f64(&c[0].value) - 1.7043).abs() < 5e-5);

        let s = discrete_optimum(5, CostMeasure::Swaps);
        assert_eq!(s[0].t, [0, 3, 0]);
        assert!((rational_to_f64(&s[0].value) - 0.3926).abs() < 5e-5);

        let b = discrete_optimum(5, CostMeasure::BytecodeModel);
        assert_eq!(b[0].t, [0, 1, 2]);
        assert!((rational_to_f64(&b[0].value) - 18.791).abs() < 5e-4);
    }

    #[test]
    fn sample_size_eight_comparison_winner() {
        let c = discrete_optimum(8, CostMeasure::Comparisons);
        assert_eq!(c[0].t, [3, 1, 2]);
    }

    #[test]
    fn coefficient_minima_sit_at_the_extreme_points() {
        for k in 2..=12u32 {
            let budget = k - 2;
            for (measure, expected) in [
                (CostMeasure::Comparisons, [budget, 0, 0]),
                (CostMeasure::Swaps, [0, budget, 0]),
                (CostMeasure::BytecodeModel, [0, 0, budget]),
            ] {
                let mut best: Option<([u32; 3], Rational)> = None;
                for t1 in 0..=budget {
                    for t2 in 0..=(budget - t1) {
                        let t = [t1, t2, budget - t1 - t2];
                        let a = crate::analysis::cost_coefficient(t, measure);
                        if best.as_ref().is_none_or(|(_, v)| a < *v) {
                            best = Some((t, a));
                        }
                    }
                }
                assert_eq!(best.unwrap().0, expected, "k={k} {measure}");
            }
        }
    }

    #[test]
    fn continuous_comparison_optimum() {
        let opt = continuous_optimum(CostMeasure::Comparisons, 1e-8);
        assert!(!opt.boundary);
        assert!((opt.value - 1.49310).abs() < 5e-4);
        let expected = [0.428846, 0.268773, 0.302381];
        for (l, e) in expected.iter().enumerate() {
            assert!((opt.tau[l] - e).abs() < 1e-3, "component {l}");
        }
    }

    #[test]
    fn continuous_bytecode_optimum() {
        let opt = continuous_optimum(CostMeasure::BytecodeModel, 1e-8);
        assert!(!opt.boundary);
        assert!((opt.value - 16.38326).abs() < 5e-4);
        let expected = [0.206772, 0.348562, 0.444666];
        for (l, e) in expected.iter().enumerate() {
            assert!((opt.tau[l] - e).abs() < 1e-3, "component {l}");
        }
    }

    #[test]
    fn continuous_swap_minimum_is_on_the_boundary() {
        let opt = continuous_optimum(CostMeasure::Swaps, 1e-8);
        assert!(opt.boundary);
        assert!(opt.value < 1e-4);
        assert!(opt.tau[0] < 1e-6);
        // The minimizing vertex concentrates the sample in one outer class.
        assert!(opt.tau[1] > 0.999 || opt.tau[2] > 0.999);
    }

    #[test]
    fn discrete_ranking_approaches_the_continuous_optimum() {
        let ranking = discrete_optimum(50, CostMeasure::Comparisons);
        assert_eq!(ranking[0].t, [21, 13, 14]);
        let opt = continuous_optimum(CostMeasure::Comparisons, 1e-8);
        for l in 0..3 {
            let scaled = f64::from(ranking[0].t[l]) / 50.0;
            assert!((scaled - opt.tau[l]).abs() < 0.06, "component {l}");
        }
    }

    #[test]
    fn relative_table_pins_the_baseline_at_zero() {
        let cells = relative_table(8, [2, 2, 2]);
        assert_eq!(cells.len(), 28);
        let base = cells.iter().find(|c| c.t == [2, 2, 2]).unwrap();
        assert_eq!(base.inv_entropy_pct, 0.0);
        assert_eq!(base.coefficient_pct, 0.0);
        assert_eq!(base.ratio_pct, 0.0);
    }

    #[test]
    fn relative_table_spot_values() {
        let cells = relative_table(8, [2, 2, 2]);
        let find = |t: [u32; 3]| cells.iter().find(|c| c.t == t).unwrap();
        assert!((find([3, 1, 2]).ratio_pct + 1.08).abs() < 0.01);
        assert!((find([0, 6, 0]).ratio_pct - 94.0).abs() < 0.1);
        assert!((find([0, 0, 6]).inv_entropy_pct - 68.7).abs() < 0.1);
    }
}
