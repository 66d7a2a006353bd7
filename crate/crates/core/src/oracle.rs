//! Finite-cutoff numerics for the same loop integrals, independent of the
//! symbolic kernel.
//!
//! After Wick rotation `∫ d⁴K/(2π)⁴ (K² − M²)^(−n)` becomes
//! `i (−1)^n/(8π²) ∫₀^Λ k³ (k² + M²)^(−n) dk`, so in units of `i/(16π²)` the
//! value is `2 (−1)^n` times the radial integral.

use std::thread;

use crate::error::{require_positive, Error, Result};
use crate::numeric::Quadrature;

/// Λ grid and tolerance for a cutoff sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct CutoffProbe {
    power: u32,
    mass_sq: f64,
    cutoffs: Vec<f64>,
    rel_tol: f64,
}

impl CutoffProbe {
    pub const DEFAULT_REL_TOL: f64 = 1e-10;

    pub fn new(power: u32, mass_sq: f64, cutoffs: Vec<f64>) -> Result<Self> {
        Self::with_rel_tol(power, mass_sq, cutoffs, Self::DEFAULT_REL_TOL)
    }

    pub fn with_rel_tol(power: u32, mass_sq: f64, cutoffs: Vec<f64>, rel_tol: f64) -> Result<Self> {
        if power == 0 {
            return Err(Error::InvalidInput("denominator power must be at least 1".into()));
        }
        require_positive("M²", mass_sq)?;
        if !(rel_tol > 0.0 && rel_tol <= 1e-6) {
            return Err(Error::InvalidInput(format!("relative tolerance {rel_tol} outside (0, 1e-6]")));
        }
        if cutoffs.is_empty() {
            return Err(Error::InvalidInput("cutoff grid is empty".into()));
        }
        for &c in &cutoffs {
            require_positive("Λ", c)?;
        }
        if cutoffs.windows(2).any(|w| w[1] <= w[0]) {
            return Err(Error::InvalidInput("cutoffs must be strictly increasing".into()));
        }
        Ok(CutoffProbe { power, mass_sq, cutoffs, rel_tol })
    }

    /// Decades `Λ_n = 10^k` for `k` in `from..=to`.
    pub fn decades(power: u32, mass_sq: f64, from: i32, to: i32) -> Result<Self> {
        Self::new(power, mass_sq, (from..=to).map(|k| 10f64.powi(k)).collect())
    }

    pub fn power(&self) -> u32 {
        self.power
    }

    pub fn mass_sq(&self) -> f64 {
        self.mass_sq
    }

    pub fn cutoffs(&self) -> &[f64] {
        &self.cutoffs
    }

    pub fn rel_tol(&self) -> f64 {
        self.rel_tol
    }

    fn quadrature(&self) -> Quadrature {
        Quadrature::with_rel_tol(self.rel_tol)
    }

    /// Radial integral at every cutoff of the grid.
    ///
    /// Each interval `[Λ_{i−1}, Λ_i]` is integrated on its own thread and the
    /// pieces are accumulated in grid order, so increments never suffer from
    /// cancellation between large cumulative values.
    pub fn sweep(&self) -> Result<Vec<RadialSample>> {
        let quad = self.quadrature();
        let bounds: Vec<(f64, f64)> = std::iter::once(0.0)
            .chain(self.cutoffs.iter().copied())
            .zip(self.cutoffs.iter().copied())
            .collect();
        let increments: Vec<Result<f64>> = thread::scope(|scope| {
            let handles: Vec<_> = bounds
                .iter()
                .map(|&(a, b)| scope.spawn(move || radial_between(self.power, self.mass_sq, a, b, &quad)))
                .collect();
            handles.into_iter().map(|h| h.join().expect("quadrature worker panicked")).collect()
        });
        let mut total = 0.0;
        let mut samples = Vec::with_capacity(self.cutoffs.len());
        for (&cutoff, inc) in self.cutoffs.iter().zip(increments) {
            let increment = inc?;
            total += increment;
            samples.push(RadialSample { cutoff, radial: total, increment });
        }
        Ok(samples)
    }
}

/// Radial integral `∫₀^Λ k³(k²+M²)^(−n) dk` at one cutoff.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RadialSample {
    pub cutoff: f64,
    pub radial: f64,
    /// Contribution of `[previous cutoff, cutoff]` (from 0 for the first).
    pub increment: f64,
}

impl RadialSample {
    /// The Minkowski loop integral in units of `i/(16π²)`.
    pub fn loop_value(&self, power: u32) -> f64 {
        wick_factor(power) * self.radial
    }
}

fn wick_factor(power: u32) -> f64 {
    if power.is_multiple_of(2) {
        2.0
    } else {
        -2.0
    }
}

/// Adaptive quadrature of the radial integrand over `[a, b]`, split at
/// `√M²` and then per decade so each panel sees a smooth integrand.
fn radial_between(power: u32, mass_sq: f64, a: f64, b: f64, quad: &Quadrature) -> Result<f64> {
    let n = power as i32;
    let integrand = |k: f64| k.powi(3) * (k * k + mass_sq).powi(-n);
    let mut points = vec![a];
    let mut edge = mass_sq.sqrt();
    while edge < b {
        if edge > a {
            points.push(edge);
        }
        edge *= 10.0;
    }
    points.push(b);
    Ok(quad.integrate_pieces(integrand, &points)?.value)
}

/// `∫₀^Λ k³ (k² + M²)^(−n) dk` by adaptive quadrature.
pub fn radial_integral(power: u32, mass_sq: f64, cutoff: f64, rel_tol: f64) -> Result<f64> {
    let probe = CutoffProbe::with_rel_tol(power, mass_sq, vec![cutoff], rel_tol)?;
    radial_between(power, mass_sq, 0.0, cutoff, &probe.quadrature())
}

/// Wick-rotated loop integral at finite cutoff, in units of `i/(16π²)`.
pub fn wick_rotated_radial(power: u32, mass_sq: f64, cutoff: f64) -> Result<f64> {
    Ok(wick_factor(power) * radial_integral(power, mass_sq, cutoff, CutoffProbe::DEFAULT_REL_TOL)?)
}

/// Closed-form radial integral for the quadrature self-check.
///
/// With `u = k² + M²`: `½ ∫_{M²}^{Λ²+M²} (u^{1−n} − M² u^{−n}) du`.
pub fn radial_antiderivative(power: u32, mass_sq: f64, cutoff: f64) -> f64 {
    let lo = mass_sq;
    let hi = cutoff * cutoff + mass_sq;
    let n = power as i32;
    // ∫ u^e du between lo and hi
    let pow_int = |e: i32| {
        if e == -1 {
            (hi / lo).ln()
        } else {
            let e1 = (e + 1) as f64;
            (hi.powi(e + 1) - lo.powi(e + 1)) / e1
        }
    };
    0.5 * (pow_int(1 - n) - mass_sq * pow_int(-n))
}

/// Large-Λ behavior of a sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DivergenceClass {
    Log,
    LinearFamily,
    Quadratic,
    Convergent,
}

impl DivergenceClass {
    pub fn as_str(&self) -> &'static str {
        match self {
            DivergenceClass::Log => "log",
            DivergenceClass::LinearFamily => "linear-family",
            DivergenceClass::Quadratic => "quadratic",
            DivergenceClass::Convergent => "convergent",
        }
    }
}

/// Classification plus fitted growth.
///
/// `exponent` is `p` in `dR/d ln Λ ∼ Λ^p`. `coefficient` is the slope against
/// `Λ²` (quadratic), `Λ` (linear), or `ln Λ` (log); for convergent sweeps it is
/// the last radial value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DivergenceSignature {
    pub class: DivergenceClass,
    pub exponent: f64,
    pub coefficient: f64,
}

fn check_span(probe: &CutoffProbe, decades: f64) -> Result<()> {
    let c = probe.cutoffs();
    let span = (c[c.len() - 1] / c[0]).log10();
    if c.len() < 4 || span < decades - 1e-9 {
        return Err(Error::InvalidInput(format!(
            "grid needs at least 4 cutoffs over {decades} decades, got {} over {span:.2}",
            c.len()
        )));
    }
    Ok(())
}

/// Fits the Λ-dependence of the radial integral on the two top grid intervals.
pub fn divergence_signature(probe: &CutoffProbe) -> Result<DivergenceSignature> {
    check_span(probe, 3.0)?;
    let samples = probe.sweep()?;
    let k = samples.len();
    let (a, b, c) = (&samples[k - 3], &samples[k - 2], &samples[k - 1]);
    let slope = |lo: &RadialSample, hi: &RadialSample| hi.increment / (hi.cutoff / lo.cutoff).ln();
    let s_prev = slope(a, b);
    let s_last = slope(b, c);
    let mid_prev = (a.cutoff * b.cutoff).sqrt();
    let mid_last = (b.cutoff * c.cutoff).sqrt();
    let exponent = if s_prev > 0.0 && s_last > 0.0 {
        (s_last / s_prev).ln() / (mid_last / mid_prev).ln()
    } else {
        f64::NEG_INFINITY
    };
    let class = if exponent > 1.5 {
        DivergenceClass::Quadratic
    } else if exponent > 0.5 {
        DivergenceClass::LinearFamily
    } else if exponent > -0.5 {
        DivergenceClass::Log
    } else {
        DivergenceClass::Convergent
    };
    let coefficient = match class {
        DivergenceClass::Quadratic => c.increment / (c.cutoff * c.cutoff - b.cutoff * b.cutoff),
        DivergenceClass::LinearFamily => c.increment / (c.cutoff - b.cutoff),
        DivergenceClass::Log => s_last,
        DivergenceClass::Convergent => c.radial,
    };
    Ok(DivergenceSignature { class, exponent, coefficient })
}

/// `lim_{Λ→∞} [R(Λ) − ln Λ]` for the logarithmic integral, by a linear fit in
/// `1/Λ²` through the two largest cutoffs.
pub fn asymptote_constant(probe: &CutoffProbe) -> Result<f64> {
    if probe.power() != 2 {
        return Err(Error::InvalidInput(format!(
            "asymptote extraction needs the logarithmic integral (n = 2), got n = {}",
            probe.power()
        )));
    }
    check_span(probe, 4.0)?;
    let samples = probe.sweep()?;
    let k = samples.len();
    let (lo, hi) = (&samples[k - 2], &samples[k - 1]);
    let g_lo = lo.radial - lo.cutoff.ln();
    let g_hi = hi.radial - hi.cutoff.ln();
    let (l_lo, l_hi) = (lo.cutoff * lo.cutoff, hi.cutoff * hi.cutoff);
    Ok((g_hi * l_hi - g_lo * l_lo) / (l_hi - l_lo))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadrature_matches_antiderivative() {
        for n in 1..=5 {
            for m_sq in [0.5, 1.0, 2.0] {
                for cutoff in [0.3, 10.0, 1e4] {
                    let q = radial_integral(n, m_sq, cutoff, 1e-10).unwrap();
                    let a = radial_antiderivative(n, m_sq, cutoff);
                    assert!(((q - a) / a).abs() < 1e-10, "n={n} M²={m_sq} Λ={cutoff}: {q} vs {a}");
                }
            }
        }
    }

    #[test]
    fn log_integral_at_cutoff_ten() {
        let expected = 0.5 * (101f64.ln() + 1.0 / 101.0 - 1.0);
        let q = radial_integral(2, 1.0, 10.0, 1e-10).unwrap();
        assert!((q - expected).abs() < 1e-10);
        assert!((q - 1.81251).abs() < 1e-5);
    }

    #[test]
    fn convergent_limit() {
        let v = wick_rotated_radial(3, 1.0, 1e6).unwrap();
        assert!((v + 0.5).abs() < 1e-10, "{v}");
    }

    #[test]
    fn quadratic_growth_ratio() {
        let r = |c| radial_integral(1, 1.0, c, 1e-10).unwrap();
        let (l, l2, l4) = (r(1e3), r(2e3), r(4e3));
        let ratio = (l4 - l2) / (l2 - l);
        assert!((ratio - 4.0).abs() < 1e-3, "{ratio}");
    }

    #[test]
    fn signatures() {
        let log = divergence_signature(&CutoffProbe::decades(2, 1.0, 2, 5).unwrap()).unwrap();
        assert_eq!(log.class, DivergenceClass::Log);
        assert!((log.coefficient - 1.0).abs() < 0.01);
        let conv = divergence_signature(&CutoffProbe::decades(3, 1.0, 2, 5).unwrap()).unwrap();
        assert_eq!(conv.class, DivergenceClass::Convergent);
        assert!((conv.exponent + 2.0).abs() < 0.05, "{conv:?}");
        let quad = divergence_signature(&CutoffProbe::decades(1, 1.0, 2, 5).unwrap()).unwrap();
        assert_eq!(quad.class, DivergenceClass::Quadratic);
        assert!((quad.coefficient - 0.5).abs() < 1e-3);
    }

    #[test]
    fn probe_validation() {
        assert!(CutoffProbe::new(2, 1.0, vec![10.0, 5.0]).is_err());
        assert!(CutoffProbe::new(2, 1.0, vec![]).is_err());
        assert!(CutoffProbe::new(0, 1.0, vec![1.0]).is_err());
        assert!(CutoffProbe::with_rel_tol(2, 1.0, vec![1.0], 1e-3).is_err());
        let short = CutoffProbe::new(2, 1.0, vec![10.0, 100.0, 1000.0]).unwrap();
        assert!(divergence_signature(&short).is_err());
        let narrow = CutoffProbe::decades(2, 1.0, 2, 5).unwrap();
        assert!(asymptote_constant(&narrow).is_err());
        let wrong = CutoffProbe::decades(3, 1.0, 1, 5).unwrap();
        assert!(asymptote_constant(&wrong).is_err());
    }

    #[test]
    fn asymptote_examples() {
        let a = asymptote_constant(&CutoffProbe::decades(2, 1.0, 1, 5).unwrap()).unwrap();
        assert!((a + 0.5).abs() < 1e-7, "{a}");
        let e_sq = std::f64::consts::E.powi(2);
        let b = asymptote_constant(&CutoffProbe::decades(2, e_sq, 1, 5).unwrap()).unwrap();
        assert!((b + 1.5).abs() < 1e-7, "{b}");
    }
}
