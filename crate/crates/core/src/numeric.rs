//! Double-precision workhorses shared by the oracles: adaptive Gauss–Kronrod
//! quadrature, bracketing root search and a one-dimensional minimizer.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};

// Gauss–Kronrod 7/15 abscissae and weights on [-1, 1]; the Gauss nodes are the
// odd-indexed Kronrod nodes.
const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// One G7/K15 panel: returns (Kronrod estimate, |Kronrod − Gauss|).
fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for (j, (&x, &w)) in XGK.iter().zip(WGK.iter()).take(7).enumerate() {
        let dx = half * x;
        let pair = f(center - dx) + f(center + dx);
        kronrod += w * pair;
        if j % 2 == 1 {
            gauss += WG[j / 2] * pair;
        }
    }
    (kronrod * half, ((kronrod - gauss) * half).abs())
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

/// Result of an adaptive integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult {
    pub value: f64,
    pub error: f64,
    pub intervals: usize,
}

/// Globally adaptive Gauss–Kronrod integrator.
///
/// The panel with the largest error estimate is bisected until the summed
/// estimate drops below `max(abs_tol, rel_tol·|value|)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quadrature {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_intervals: usize,
}

impl Default for Quadrature {
    fn default() -> Self {
        Quadrature { rel_tol: 1e-10, abs_tol: 1e-300, max_intervals: 4000 }
    }
}

impl Quadrature {
    pub fn with_rel_tol(rel_tol: f64) -> Self {
        Quadrature { rel_tol, ..Default::default() }
    }

    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F, a: f64, b: f64) -> Result<QuadResult> {
        if !(a.is_finite() && b.is_finite()) {
            return Err(Error::InvalidInput(format!("integration bounds [{a}, {b}] must be finite")));
        }
        if a == b {
            return Ok(QuadResult { value: 0.0, error: 0.0, intervals: 0 });
        }
        let (value, error) = gk15(&f, a, b);
        let mut heap = BinaryHeap::new();
        heap.push(Panel { a, b, value, error });
        let mut total = value;
        let mut total_err = error;
        while total_err > self.abs_tol.max(self.rel_tol * total.abs()) {
            if heap.len() >= self.max_intervals {
                return Err(Error::QuadratureTolerance {
                    value: total,
                    error: total_err,
                    intervals: heap.len(),
                });
            }
            let worst = heap.pop().expect("heap is never empty");
            let mid = 0.5 * (worst.a + worst.b);
            if mid <= worst.a || mid >= worst.b {
                // panel can no longer be split in double precision
                return Err(Error::QuadratureTolerance {
                    value: total,
                    error: total_err,
                    intervals: heap.len() + 1,
                });
            }
            let (lv, le) = gk15(&f, worst.a, mid);
            let (rv, re) = gk15(&f, mid, worst.b);
            total += lv + rv - worst.value;
            total_err += le + re - worst.error;
            heap.push(Panel { a: worst.a, b: mid, value: lv, error: le });
            heap.push(Panel { a: mid, b: worst.b, value: rv, error: re });
        }
        // re-sum to shed the drift of the running update
        let value = heap.iter().map(|p| p.value).sum();
        let error = heap.iter().map(|p| p.error).sum();
        Ok(QuadResult { value, error, intervals: heap.len() })
    }

    /// Integrates piecewise over consecutive breakpoints and sums the pieces.
    pub fn integrate_pieces<F: Fn(f64) -> f64>(&self, f: F, points: &[f64]) -> Result<QuadResult> {
        let mut acc = QuadResult { value: 0.0, error: 0.0, intervals: 0 };
        for w in points.windows(2) {
            let piece = self.integrate(&f, w[0], w[1])?;
            acc.value += piece.value;
            acc.error += piece.error;
            acc.intervals += piece.intervals;
        }
        Ok(acc)
    }
}

/// Bisection on a sign change of `f` in `[lo, hi]`, run until the bracket can
/// no longer shrink in double precision.
pub fn bisect<F: Fn(f64) -> f64>(f: F, lo: f64, hi: f64) -> Result<f64> {
    let (mut lo, mut hi) = (lo.min(hi), lo.max(hi));
    let mut f_lo = f(lo);
    let f_hi = f(hi);
    if f_lo == 0.0 {
        return Ok(lo);
    }
    if f_hi == 0.0 {
        return Ok(hi);
    }
    if f_lo.signum() == f_hi.signum() || f_lo.is_nan() || f_hi.is_nan() {
        return Err(Error::NoBracket { lo, hi });
    }
    for _ in 0..2000 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let f_mid = f(mid);
        if f_mid == 0.0 {
            return Ok(mid);
        }
        if f_mid.signum() == f_lo.signum() {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// Dense real polynomial `Σ c_k x^k`.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial {
    coeffs: Vec<f64>,
}

impl Polynomial {
    pub fn new(coeffs: Vec<f64>) -> Self {
        Polynomial { coeffs }
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + c)
    }

    pub fn derivative(&self) -> Polynomial {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, &c)| k as f64 * c)
            .collect();
        Polynomial { coeffs }
    }
}

/// Locates the global minimum of a differentiable `f` on `[0, ∞)`.
///
/// The search window grows until `f` is increasing at its right edge, a dense
/// scan picks the lowest sample, and bisection on `df` polishes it.
pub fn minimize_on_half_line<F, D>(f: F, df: D, scan_points: usize) -> Result<f64>
where
    F: Fn(f64) -> f64,
    D: Fn(f64) -> f64,
{
    let mut hi = 1.0;
    let mut grow = 0;
    while df(hi) <= 0.0 {
        hi *= 2.0;
        grow += 1;
        if grow > 1100 || !hi.is_finite() {
            return Err(Error::InvalidInput("function is unbounded below on [0, ∞)".into()));
        }
    }
    let n = scan_points.max(8);
    let step = hi / n as f64;
    let (best, _) = (0..=n)
        .map(|i| (i, f(i as f64 * step)))
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .expect("scan is non-empty");
    if best == 0 && df(0.0) >= 0.0 {
        return Ok(0.0);
    }
    let lo = best.saturating_sub(1) as f64 * step;
    let up = (best + 1).min(n) as f64 * step;
    bisect(&df, lo, up)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_kronrod_is_exact_on_low_degree_polynomials() {
        let q = Quadrature::default();
        let r = q.integrate(|x| 3.0 * x * x + 1.0, 0.0, 2.0).unwrap();
        assert!((r.value - 10.0).abs() < 1e-13);
        assert_eq!(r.intervals, 1);
    }

    #[test]
    fn adaptive_handles_integrable_log_singularity() {
        let q = Quadrature::default();
        let r = q.integrate(|x: f64| x.ln(), 0.0, 1.0).unwrap();
        assert!((r.value + 1.0).abs() < 1e-9, "{r:?}");
    }

    #[test]
    fn tight_budget_reports_tolerance_failure() {
        let q = Quadrature { rel_tol: 1e-15, abs_tol: 0.0, max_intervals: 3 };
        let err = q.integrate(|x: f64| x.ln(), 0.0, 1.0).unwrap_err();
        assert!(matches!(err, Error::QuadratureTolerance { .. }));
        assert!(err.is_numeric());
    }

    #[test]
    fn pieces_sum() {
        let q = Quadrature::default();
        let r = q.integrate_pieces(|x| x, &[0.0, 1.0, 2.0, 4.0]).unwrap();
        assert!((r.value - 8.0).abs() < 1e-13);
    }

    #[test]
    fn bisection_finds_sqrt_two() {
        let r = bisect(|x| x * x - 2.0, 0.0, 2.0).unwrap();
        assert!((r - 2f64.sqrt()).abs() < 1e-15);
        assert!(matches!(bisect(|x| x * x + 1.0, -1.0, 1.0), Err(Error::NoBracket { .. })));
    }

    #[test]
    fn polynomial_derivative() {
        let p = Polynomial::new(vec![1.0, 2.0, 3.0]);
        assert_eq!(p.eval(2.0), 17.0);
        assert_eq!(p.derivative().coeffs(), &[2.0, 6.0]);
    }

    #[test]
    fn minimizer_finds_interior_minimum() {
        let p = Polynomial::new(vec![0.0, 0.0, -1.0, 0.0, 0.25]);
        let d = p.derivative();
        let x = minimize_on_half_line(|x| p.eval(x), |x| d.eval(x), 400).unwrap();
        assert!((x - 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn minimizer_returns_origin_for_convex_well() {
        let x = minimize_on_half_line(|x| x * x, |x| 2.0 * x, 100).unwrap();
        assert_eq!(x, 0.0);
    }
}
