//! λΦ⁴ with spontaneous symmetry breaking: vacuum and excitation mass, the
//! one-loop coupling, the mass-ratio invariant, and the chain resummation whose
//! pole marks the critical scale.

use std::f64::consts::PI;

use crate::error::{require_positive, Error, Result};
use crate::numeric::Polynomial;

/// One-loop coefficient `9/(32π²)` of `λ_R = λ(1 + 9λ/(32π²))`.
pub const ONE_LOOP_COEFF: f64 = 9.0 / (32.0 * PI * PI);

/// `V(Φ) = ½ μ² Φ² + λ Φ⁴ / 4!`. `μ² = m² > 0` is the symmetric model,
/// `μ² = −σ < 0` the broken one.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuarticPotential {
    pub mass_term: f64,
    pub lambda: f64,
}

impl QuarticPotential {
    pub fn symmetric(m: f64, lambda: f64) -> Result<Self> {
        require_positive("m", m)?;
        require_positive("λ", lambda)?;
        Ok(QuarticPotential { mass_term: m * m, lambda })
    }

    pub fn eval(&self, phi: f64) -> f64 {
        self.as_polynomial().eval(phi)
    }

    pub fn as_polynomial(&self) -> Polynomial {
        Polynomial::new(vec![0.0, 0.0, 0.5 * self.mass_term, 0.0, self.lambda / 24.0])
    }
}

/// Wrong-sign potential `V(Φ) = −½σΦ² + λΦ⁴/4!`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SsbPotential {
    sigma: f64,
    lambda: f64,
}

/// Broken vacuum `Φ₁` and the mass `m_σ` of its excitation, both in GeV.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SsbVacuum {
    pub phi1: f64,
    pub m_sigma: f64,
}

impl SsbPotential {
    /// `sigma` in GeV², `lambda` dimensionless; both must be positive.
    pub fn new(sigma: f64, lambda: f64) -> Result<Self> {
        require_positive("σ", sigma)?;
        require_positive("λ", lambda)?;
        Ok(SsbPotential { sigma, lambda })
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    pub fn as_quartic(&self) -> QuarticPotential {
        QuarticPotential { mass_term: -self.sigma, lambda: self.lambda }
    }

    pub fn eval(&self, phi: f64) -> f64 {
        self.as_quartic().eval(phi)
    }

    pub fn derivative(&self, phi: f64) -> f64 {
        -self.sigma * phi + self.lambda * phi.powi(3) / 6.0
    }

    pub fn curvature(&self, phi: f64) -> f64 {
        -self.sigma + 0.5 * self.lambda * phi * phi
    }

    /// `Φ₁ = (6σ/λ)^½`, `m_σ = (2σ)^½`.
    pub fn vacuum(&self) -> SsbVacuum {
        SsbVacuum { phi1: (6.0 * self.sigma / self.lambda).sqrt(), m_sigma: (2.0 * self.sigma).sqrt() }
    }
}

pub fn ssb_vacuum(potential: &SsbPotential) -> SsbVacuum {
    potential.vacuum()
}

/// `λ_R = λ (1 + 9λ/(32π²))`.
pub fn lambda_renormalized(lambda: f64) -> Result<f64> {
    if !(lambda.is_finite() && lambda >= 0.0) {
        return Err(Error::InvalidInput(format!("λ must be non-negative, got {lambda}")));
    }
    Ok(lambda * (1.0 + ONE_LOOP_COEFF * lambda))
}

/// `λ = 3 (m_σ / Φ₁)²`; unchanged by loop corrections that keep both scales.
pub fn lambda_invariant_ratio(m_sigma: f64, phi1: f64) -> Result<f64> {
    require_positive("m_σ", m_sigma)?;
    require_positive("Φ₁", phi1)?;
    let ratio = m_sigma / phi1;
    Ok(3.0 * ratio * ratio)
}

/// `S_n = 1 + r + ⋯ + r^n`, finite for every finite `n`.
pub fn geometric_partial_sum(r: f64, n: u64) -> f64 {
    const DIRECT_LIMIT: u64 = 4096;
    if n <= DIRECT_LIMIT {
        return (0..n).fold(1.0, |acc, _| 1.0 + r * acc);
    }
    if r == 1.0 {
        return n as f64 + 1.0;
    }
    let terms = n as f64 + 1.0;
    if r > 0.0 {
        // (r^{n+1} − 1)/(r − 1) without cancellation near r = 1
        ((terms * (r - 1.0).ln_1p()).exp_m1()) / (r - 1.0)
    } else {
        (1.0 - r.powf(terms)) / (1.0 - r)
    }
}

/// Default chain coefficient, matched to the one-loop coupling.
pub const DEFAULT_BETA_COEFF: f64 = ONE_LOOP_COEFF;

/// Reference point of the resummed running coupling
/// `λ(μ) = λ₀ / (1 − b λ₀ ln(μ²/μ₀²))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResummationState {
    lambda0: f64,
    mu0: f64,
    beta_coeff: f64,
}

/// Resummed coupling, or the signal that the chain has passed its pole.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ResummedCoupling {
    Finite(f64),
    Pole,
}

impl ResummedCoupling {
    pub fn value(&self) -> Option<f64> {
        match *self {
            ResummedCoupling::Finite(v) => Some(v),
            ResummedCoupling::Pole => None,
        }
    }
}

/// Vacuum phase at a given energy.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VacuumPhase {
    Broken,
    SymmetryRestored,
}

impl ResummationState {
    pub fn new(lambda0: f64, mu0: f64, beta_coeff: f64) -> Result<Self> {
        require_positive("λ₀", lambda0)?;
        require_positive("μ₀", mu0)?;
        require_positive("b", beta_coeff)?;
        Ok(ResummationState { lambda0, mu0, beta_coeff })
    }

    pub fn with_default_beta(lambda0: f64, mu0: f64) -> Result<Self> {
        Self::new(lambda0, mu0, DEFAULT_BETA_COEFF)
    }

    pub fn lambda0(&self) -> f64 {
        self.lambda0
    }

    pub fn mu0(&self) -> f64 {
        self.mu0
    }

    pub fn beta_coeff(&self) -> f64 {
        self.beta_coeff
    }

    fn log_ratio(&self, mu: f64) -> Result<f64> {
        require_positive("μ", mu)?;
        Ok(2.0 * (mu / self.mu0).ln())
    }

    /// Chain ratio `r = b λ₀ ln(μ²/μ₀²)`.
    pub fn chain_ratio(&self, mu: f64) -> Result<f64> {
        Ok(self.beta_coeff * self.lambda0 * self.log_ratio(mu)?)
    }

    /// Infinite chain `λ₀ Σ r^k = λ₀ / (1 − r)`; a pole once `1 − r ≤ 0`.
    pub fn resum_chain(&self, mu: f64) -> Result<ResummedCoupling> {
        let denominator = 1.0 - self.chain_ratio(mu)?;
        if denominator <= 0.0 {
            Ok(ResummedCoupling::Pole)
        } else {
            Ok(ResummedCoupling::Finite(self.lambda0 / denominator))
        }
    }

    /// The chain truncated after `order` insertions, `λ₀ S_order(r)`.
    pub fn truncated(&self, mu: f64, order: u64) -> Result<f64> {
        Ok(self.lambda0 * geometric_partial_sum(self.chain_ratio(mu)?, order))
    }

    /// `λ₀ (1 + b λ₀ ln(μ²/μ₀²))`.
    pub fn first_order(&self, mu: f64) -> Result<f64> {
        self.truncated(mu, 1)
    }

    /// `μ_c = μ₀ exp(1 / (2 b λ₀))`, where the resummed denominator vanishes.
    pub fn critical_scale(&self) -> f64 {
        self.mu0 * (1.0 / (2.0 * self.beta_coeff * self.lambda0)).exp()
    }

    pub fn phase(&self, mu: f64) -> Result<VacuumPhase> {
        require_positive("μ", mu)?;
        Ok(if mu > self.critical_scale() { VacuumPhase::SymmetryRestored } else { VacuumPhase::Broken })
    }
}

/// Higgs mass reference values in GeV: earlier bounds and the later
/// prediction. Stored, not derived.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HiggsReference {
    pub lower_bound: f64,
    pub upper_bound: f64,
    pub predicted: f64,
}

pub const HIGGS_REFERENCE: HiggsReference =
    HiggsReference { lower_bound: 76.0, upper_bound: 170.0, predicted: 138.0 };

impl HiggsReference {
    pub fn is_ordered(&self) -> bool {
        self.lower_bound < self.predicted && self.predicted < self.upper_bound
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn vacuum_examples() {
        let v = SsbPotential::new(1.0, 6.0).unwrap().vacuum();
        assert_eq!(v.phi1, 1.0);
        assert!((v.m_sigma - 2f64.sqrt()).abs() < 1e-15);
        let v = SsbPotential::new(2.0, 6.0).unwrap().vacuum();
        assert!((v.phi1 - 2f64.sqrt()).abs() < 1e-15);
        assert_eq!(v.m_sigma, 2.0);
        assert!(SsbPotential::new(0.0, 1.0).is_err());
        assert!(SsbPotential::new(1.0, -1.0).is_err());
    }

    #[test]
    fn stationarity_and_curvature() {
        for (sigma, lambda) in [(0.3, 0.1), (1.0, 6.0), (40.0, 2.5), (8100.0, 0.7)] {
            let p = SsbPotential::new(sigma, lambda).unwrap();
            let v = p.vacuum();
            assert!(p.derivative(v.phi1).abs() < 1e-9 * sigma * v.phi1);
            assert!((p.curvature(v.phi1) - 2.0 * sigma).abs() < 1e-12 * sigma);
            assert!((p.curvature(v.phi1) - v.m_sigma * v.m_sigma).abs() < 1e-12 * sigma);
        }
    }

    #[test]
    fn symmetric_potential_is_minimal_at_origin() {
        let p = QuarticPotential::symmetric(1.0, 0.5).unwrap();
        assert_eq!(p.eval(0.0), 0.0);
        assert!(p.eval(0.3) > 0.0);
    }

    #[test]
    fn renormalized_coupling_examples() {
        assert_eq!(lambda_renormalized(0.0).unwrap(), 0.0);
        assert!((lambda_renormalized(1.0).unwrap() - 1.028_496_583).abs() < 1e-9);
        assert!((lambda_renormalized(2.0).unwrap() - 2.113_986_332).abs() < 1e-9);
        assert!(lambda_renormalized(-0.1).is_err());
    }

    #[test]
    fn invariant_ratio_examples() {
        assert!((lambda_invariant_ratio(2f64.sqrt(), 1.0).unwrap() - 6.0).abs() < 1e-14);
        let a = lambda_invariant_ratio(3.0, 7.0).unwrap();
        let b = lambda_invariant_ratio(3.0 * 11.5, 7.0 * 11.5).unwrap();
        assert!((a - b).abs() < 1e-15);
        assert!(lambda_invariant_ratio(0.0, 1.0).is_err());
    }

    #[test]
    fn partial_sums() {
        assert_eq!(geometric_partial_sum(1.0, 9), 10.0);
        assert_eq!(geometric_partial_sum(0.5, 3), 1.875);
        assert!((geometric_partial_sum(0.5, 200) - 2.0).abs() < 1e-15);
        assert_eq!(geometric_partial_sum(1.0, 1_000_000), 1_000_001.0);
        let near = geometric_partial_sum(1.0 + 1e-12, 1_000_000);
        // n + 1 + n(n+1)/2·ε to leading order
        assert!((near - 1_000_001.500_045).abs() < 1e-5, "{near}");
        assert!((geometric_partial_sum(-0.5, 10_000) - 2.0 / 3.0).abs() < 1e-15);
        assert_eq!(geometric_partial_sum(3.0, 0), 1.0);
    }

    #[test]
    fn resummation_examples() {
        let s = ResummationState::with_default_beta(0.5, 10.0).unwrap();
        assert_eq!(s.resum_chain(10.0).unwrap(), ResummedCoupling::Finite(0.5));
        let v = s.resum_chain(20.0).unwrap().value().unwrap();
        let denom = 1.0 - 0.5 * ONE_LOOP_COEFF * 4f64.ln();
        assert!((denom - (1.0 - 0.019_753)).abs() < 1e-5);
        assert!((v - 0.5 / denom).abs() < 1e-15);
        assert!((v - 0.51007).abs() < 1e-5);
        assert!(s.resum_chain(0.0).is_err());
    }

    #[test]
    fn critical_scale_example() {
        let s = ResummationState::with_default_beta(1.0, 1.0).unwrap();
        let mu_c = s.critical_scale();
        assert!((mu_c.ln() - 16.0 * PI * PI / 9.0).abs() < 1e-12);
        assert!((mu_c / 4.17e7 - 1.0).abs() < 0.01, "{mu_c}");
        assert!(s.resum_chain(mu_c * (1.0 - 1e-9)).unwrap().value().is_some());
        assert_eq!(s.resum_chain(mu_c * (1.0 + 1e-9)).unwrap(), ResummedCoupling::Pole);
        assert_eq!(s.phase(mu_c * 2.0).unwrap(), VacuumPhase::SymmetryRestored);
        assert_eq!(s.phase(mu_c / 2.0).unwrap(), VacuumPhase::Broken);
        let stronger = ResummationState::with_default_beta(2.0, 1.0).unwrap();
        assert!(stronger.critical_scale() < mu_c);
    }

    #[test]
    fn truncations_stay_finite_past_the_pole() {
        let s = ResummationState::with_default_beta(1.0, 1.0).unwrap();
        let beyond = s.critical_scale() * 10.0;
        assert!(s.first_order(beyond).unwrap().is_finite());
        assert!(s.truncated(beyond, 50).unwrap().is_finite());
    }

    #[test]
    fn higgs_reference_ordering() {
        assert!(HIGGS_REFERENCE.is_ordered());
        assert_eq!(
            (HIGGS_REFERENCE.lower_bound, HIGGS_REFERENCE.predicted, HIGGS_REFERENCE.upper_bound),
            (76.0, 138.0, 170.0)
        );
    }
}
