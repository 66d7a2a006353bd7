//! One-loop electron self-energy with the logarithmic loop integral fixed by
//! the on-shell condition.
//!
//! Conventions: `−iΣ(p) = −e² ∫₀¹ dx [a(x) p̸ + b(x)] I(M²(x))` with
//! `a(x) = −2(1 − x)`, `b(x) = 4m`, `α = e²/4π`. Writing the loop integral as
//! `I = Î · i/(16π²)` gives `Σ = (α/4π) ∫₀¹ [a p̸ + b] Î dx`, and the mass shift
//! is `Σ` evaluated at `p̸ = m`, `p² = m²`.

use std::f64::consts::PI;

use num_traits::Zero;

use crate::error::{require_positive, Error, Result};
use crate::feynpar::{FeynmanMassFn, LogWeight, PolyLogIntegrand};
use crate::kernel::{to_f64, Factor, Rational, ScalarLoopIntegral};
use crate::numeric::{bisect, Quadrature};

/// Low-energy fine-structure constant.
pub const FINE_STRUCTURE: f64 = 1.0 / 137.036;
/// Electron mass in GeV.
pub const ELECTRON_MASS_GEV: f64 = 0.000_510_998_95;
/// `ln(k₀/Ry)` for the hydrogen 2S level.
pub const BETHE_LOG_2S: f64 = 2.8118;
/// Quick one-loop estimate of the 2S½–2P½ splitting quoted with the method (MHz).
pub const LAMB_SHIFT_QUICK_ESTIMATE_MHZ: f64 = 997.0;
/// Measured 2S½–2P½ splitting (MHz).
pub const LAMB_SHIFT_MEASURED_MHZ: f64 = 1057.8;

/// 1 eV / h in MHz.
const EV_TO_MHZ: f64 = 2.417_989_242e8;

/// Feynman-parameter numerator of the self-energy and its kinematics.
#[derive(Debug, Clone, PartialEq)]
pub struct SelfEnergyKernel {
    /// `a(x)`, coefficient of `p̸`.
    slash: Vec<Rational>,
    /// `b(x)` in units of `m`.
    scalar: Vec<Rational>,
    p_sq: f64,
    m: f64,
    alpha: f64,
}

/// The `p̸` and unit-matrix parts of `Σ(p)`, in GeV-compatible units
/// (`slash` is dimensionless, `scalar` is a mass).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SigmaParts {
    pub slash: f64,
    pub scalar: f64,
}

impl SelfEnergyKernel {
    pub fn new(m: f64, alpha: f64, p_sq: f64) -> Result<Self> {
        require_positive("m", m)?;
        require_positive("α", alpha)?;
        // validates the real-log region
        FeynmanMassFn::new(p_sq, m * m)?;
        Ok(SelfEnergyKernel {
            slash: vec![Rational::from_integer(-2), Rational::from_integer(2)],
            scalar: vec![Rational::from_integer(4)],
            p_sq,
            m,
            alpha,
        })
    }

    pub fn on_shell(m: f64, alpha: f64) -> Result<Self> {
        Self::new(m, alpha, m * m)
    }

    pub fn slash_coeffs(&self) -> &[Rational] {
        &self.slash
    }

    pub fn scalar_coeffs(&self) -> &[Rational] {
        &self.scalar
    }

    pub fn mass_fn(&self) -> FeynmanMassFn {
        FeynmanMassFn::new(self.p_sq, self.m * self.m).expect("validated at construction")
    }

    /// Integrand of `Σ` at Feynman parameter `x ∈ (0, 1]` with `C₁ = −ln μ₁²`.
    pub fn integrand(&self, x: f64, mu1: f64) -> Result<SigmaParts> {
        require_positive("μ₁", mu1)?;
        if !(x > 0.0 && x <= 1.0) {
            return Err(Error::InvalidInput(format!("x = {x} outside (0, 1]")));
        }
        let loop_value = regularized_log_integral(self.mass_fn().eval(x)?, mu1);
        let norm = self.alpha / (4.0 * PI) * loop_value;
        let poly = |c: &[Rational]| c.iter().rev().fold(0.0, |acc, &k| acc * x + to_f64(k));
        Ok(SigmaParts { slash: norm * poly(&self.slash), scalar: norm * self.m * poly(&self.scalar) })
    }

    /// `Σ` components by numeric x-integration, valid anywhere in `p² ≤ m²`.
    pub fn sigma(&self, mu1: f64, quad: &Quadrature) -> Result<SigmaParts> {
        let slash = quad.integrate(|x| self.integrand(x, mu1).map_or(f64::NAN, |s| s.slash), 0.0, 1.0)?;
        let scalar = quad.integrate(|x| self.integrand(x, mu1).map_or(f64::NAN, |s| s.scalar), 0.0, 1.0)?;
        Ok(SigmaParts { slash: slash.value, scalar: scalar.value })
    }
}

/// `Î(M²)` for the logarithmic integral, `−ln(M²/μ₁²)`, read off the
/// regularized closed form.
fn regularized_log_integral(mass_sq: f64, mu1: f64) -> f64 {
    ScalarLoopIntegral::new(2)
        .expect("power 2 is valid")
        .regularize()
        .with_scale(1, mu1)
        .and_then(|v| v.evaluate(mass_sq))
        .unwrap_or(f64::NAN)
}

/// Radiative mass correction `δm` in GeV.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MassShift {
    pub delta_m: f64,
}

/// Exact pieces of `δm / (αm/4π) = constant + log · ln(m²/μ₁²)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ChannelCoefficients {
    pub constant: Rational,
    pub log: Rational,
}

/// Output of [`pipeline_coefficients`], total and split by Dirac channel.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PipelineCoefficients {
    pub constant: Rational,
    pub log: Rational,
    pub slash: ChannelCoefficients,
    pub scalar: ChannelCoefficients,
}

/// Runs the exact symbolic route to the on-shell mass shift: regularize the
/// logarithmic loop integral, substitute `M²(x) = m² x²`, and integrate the
/// numerator channels against `ln(m²/μ₁²) + 2 ln x`.
pub fn pipeline_coefficients() -> PipelineCoefficients {
    let value = ScalarLoopIntegral::new(2).expect("power 2 is valid").regularize();
    let log_coeff = value.log_coefficient(0);
    // ln M² + C₁ only folds into ln(M²/μ₁²) when both carry the same weight
    assert_eq!(
        value.coefficient(Factor::Constant(1), 0),
        log_coeff,
        "regularized value must have the form c·(ln M² + C₁)"
    );
    // unit m² keeps the split exact; the ln m² piece is carried by ln(m²/μ₁²)
    let (_, x_power) = FeynmanMassFn::on_shell(1.0)
        .expect("unit mass is valid")
        .log_split()
        .expect("on-shell mass function is a monomial");
    let x_power = Rational::from_integer(x_power as i64);

    let kernel = SelfEnergyKernel::on_shell(1.0, 1.0).expect("unit kernel is valid");
    let channel = |coeffs: &[Rational]| {
        let plain = PolyLogIntegrand::new(coeffs.to_vec(), LogWeight::None).integrate();
        let with_log = PolyLogIntegrand::new(coeffs.to_vec(), LogWeight::LnX).integrate();
        ChannelCoefficients { constant: log_coeff * x_power * with_log, log: log_coeff * plain }
    };
    // on shell p̸ → m, so the slash channel contributes in units of m as well
    let slash = channel(kernel.slash_coeffs());
    let scalar = channel(kernel.scalar_coeffs());
    PipelineCoefficients {
        constant: slash.constant + scalar.constant,
        log: slash.log + scalar.log,
        slash,
        scalar,
    }
}

/// `δm = (αm/4π)(5 − 3 ln(m²/μ₁²))`.
pub fn on_shell_mass_shift(m: f64, alpha: f64, mu1: f64) -> Result<MassShift> {
    require_positive("m", m)?;
    require_positive("α", alpha)?;
    require_positive("μ₁", mu1)?;
    let log = (m * m / (mu1 * mu1)).ln();
    Ok(MassShift { delta_m: alpha * m / (4.0 * PI) * (5.0 - 3.0 * log) })
}

/// Same quantity assembled from [`pipeline_coefficients`].
pub fn on_shell_mass_shift_pipeline(m: f64, alpha: f64, mu1: f64) -> Result<MassShift> {
    require_positive("m", m)?;
    require_positive("α", alpha)?;
    require_positive("μ₁", mu1)?;
    let c = pipeline_coefficients();
    let log = (m * m / (mu1 * mu1)).ln();
    Ok(MassShift { delta_m: alpha * m / (4.0 * PI) * (to_f64(c.constant) + to_f64(c.log) * log) })
}

/// Scale that makes `δm` vanish: `μ₁ = m·e^(−5/6)`.
pub fn solve_mu1(m: f64) -> Result<f64> {
    require_positive("m", m)?;
    let c = pipeline_coefficients();
    if c.log.is_zero() {
        return Err(Error::InvalidInput("mass shift does not depend on μ₁".into()));
    }
    // constant + log·ln(m²/μ₁²) = 0  ⇒  ln(μ₁/m) = constant / (2·log)
    Ok(m * (to_f64(c.constant) / (2.0 * to_f64(c.log))).exp())
}

/// Root-finder route to [`solve_mu1`]: bisection of `δm(μ₁) = 0` in `ln(μ₁/m)`.
pub fn solve_mu1_numeric(m: f64, alpha: f64) -> Result<f64> {
    require_positive("m", m)?;
    require_positive("α", alpha)?;
    let shift = |y: f64| on_shell_mass_shift(m, alpha, m * y.exp()).map_or(f64::NAN, |s| s.delta_m);
    let y = bisect(shift, -10.0, 10.0)?;
    Ok(m * y.exp())
}

/// Leading-logarithm 2S½–2P½ splitting in MHz for principal quantum number 2:
/// `ΔE = 4α⁵m / (3π n³) · [ln(1/α²) − ln(k₀/Ry) + 19/30]`.
///
/// `bethe_log` is the input `ln(k₀/Ry)`; the 2P level shift is neglected.
pub fn lamb_shift_estimate(alpha: f64, m: f64, bethe_log: f64) -> Result<f64> {
    require_positive("α", alpha)?;
    require_positive("m", m)?;
    require_positive("Bethe logarithm", bethe_log)?;
    let n = 2.0f64;
    let bracket = (1.0 / (alpha * alpha)).ln() - bethe_log + 19.0 / 30.0;
    let energy_gev = 4.0 * alpha.powi(5) * m / (3.0 * PI * n.powi(3)) * bracket;
    Ok(energy_gev * 1e9 * EV_TO_MHZ)
}
