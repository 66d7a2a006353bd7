//! Feynman-parameter mass function and exact `x ∈ [0, 1]` integration of
//! polynomial (optionally times `ln x`) integrands.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::kernel::{to_f64, Rational};

/// `M²(x) = p² x² + (m² − p²) x` for a loop with one massive and one massless
/// line.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FeynmanMassFn {
    p_sq: f64,
    m_sq: f64,
}

impl FeynmanMassFn {
    /// Accepts only the real-log region `p² ≤ m²`; timelike momenta above
    /// threshold would need complex logarithms.
    pub fn new(p_sq: f64, m_sq: f64) -> Result<Self> {
        if !(m_sq.is_finite() && m_sq > 0.0) {
            return Err(Error::InvalidInput(format!("m² must be positive, got {m_sq}")));
        }
        if !p_sq.is_finite() {
            return Err(Error::InvalidInput("p² must be finite".into()));
        }
        if p_sq > m_sq {
            return Err(Error::InvalidInput(format!(
                "p² = {p_sq} exceeds m² = {m_sq}; the logarithm would be complex"
            )));
        }
        Ok(FeynmanMassFn { p_sq, m_sq })
    }

    pub fn on_shell(m_sq: f64) -> Result<Self> {
        Self::new(m_sq, m_sq)
    }

    pub fn p_sq(&self) -> f64 {
        self.p_sq
    }

    pub fn m_sq(&self) -> f64 {
        self.m_sq
    }

    pub fn eval(&self, x: f64) -> Result<f64> {
        if !(0.0..=1.0).contains(&x) {
            return Err(Error::InvalidInput(format!("Feynman parameter x = {x} outside [0, 1]")));
        }
        Ok(self.p_sq * x * x + (self.m_sq - self.p_sq) * x)
    }

    /// When `M²(x)` is a pure monomial `A·x^k`, returns `(ln A, k)` so that
    /// `ln M²(x) = ln A + k ln x`. On shell this is `(ln m², 2)`; at `p² = 0`
    /// it is `(ln m², 1)`.
    pub fn log_split(&self) -> Option<(f64, u32)> {
        let linear = self.m_sq - self.p_sq;
        if linear == 0.0 {
            Some((self.p_sq.ln(), 2))
        } else if self.p_sq == 0.0 {
            Some((self.m_sq.ln(), 1))
        } else {
            None
        }
    }
}

/// Presence of a `ln x` factor in a [`PolyLogIntegrand`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LogWeight {
    None,
    LnX,
}

impl TryFrom<u8> for LogWeight {
    type Error = Error;

    fn try_from(w: u8) -> Result<Self> {
        match w {
            0 => Ok(LogWeight::None),
            1 => Ok(LogWeight::LnX),
            _ => Err(Error::InvalidInput(format!("log weight must be 0 or 1, got {w}"))),
        }
    }
}

/// `Σ c_k x^k`, optionally multiplied by `ln x`.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyLogIntegrand {
    coeffs: Vec<Rational>,
    log_weight: LogWeight,
}

impl PolyLogIntegrand {
    pub fn new(coeffs: Vec<Rational>, log_weight: LogWeight) -> Self {
        PolyLogIntegrand { coeffs, log_weight }
    }

    pub fn from_integers(coeffs: &[i64], log_weight: LogWeight) -> Self {
        Self::new(coeffs.iter().map(|&c| Rational::from_integer(c)).collect(), log_weight)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn log_weight(&self) -> LogWeight {
        self.log_weight
    }

    pub fn scaled(&self, factor: Rational) -> Self {
        Self::new(self.coeffs.iter().map(|&c| c * factor).collect(), self.log_weight)
    }

    /// Pointwise value, for numeric cross-checks.
    pub fn eval(&self, x: f64) -> f64 {
        let poly = self.coeffs.iter().rev().fold(0.0, |acc, &c| acc * x + to_f64(c));
        match self.log_weight {
            LogWeight::None => poly,
            LogWeight::LnX => poly * x.ln(),
        }
    }

    /// Exact `∫₀¹` using `∫ x^k = 1/(k+1)` and `∫ x^k ln x = −1/(k+1)²`.
    pub fn integrate(&self) -> Rational {
        self.coeffs
            .iter()
            .enumerate()
            .fold(Rational::zero(), |acc, (k, &c)| {
                let k1 = Rational::from_integer(k as i64 + 1);
                acc + match self.log_weight {
                    LogWeight::None => c / k1,
                    LogWeight::LnX => -c / (k1 * k1),
                }
            })
    }
}

pub fn integrate_poly_log(integrand: &PolyLogIntegrand) -> Rational {
    integrand.integrate()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mass_fn_special_points() {
        let m_sq = 2.5;
        let on = FeynmanMassFn::on_shell(m_sq).unwrap();
        let soft = FeynmanMassFn::new(0.0, m_sq).unwrap();
        for x in [0.0, 0.1, 0.5, 0.9, 1.0] {
            assert!((on.eval(x).unwrap() - m_sq * x * x).abs() < 1e-15);
            assert_eq!(soft.eval(x).unwrap(), m_sq * x);
        }
        for p_sq in [-3.0, 0.0, 1.0, 2.5] {
            let f = FeynmanMassFn::new(p_sq, m_sq).unwrap();
            assert_eq!(f.eval(1.0).unwrap(), m_sq);
        }
        assert!(on.eval(1.5).is_err());
    }

    #[test]
    fn above_threshold_is_rejected() {
        assert!(FeynmanMassFn::new(2.0, 1.0).is_err());
        assert!(FeynmanMassFn::new(0.5, 0.0).is_err());
    }

    #[test]
    fn mass_fn_non_negative_below_threshold() {
        for m_sq in [0.1, 1.0, 7.0] {
            for i in 0..=20 {
                let p_sq = m_sq * i as f64 / 20.0;
                let f = FeynmanMassFn::new(p_sq, m_sq).unwrap();
                for j in 0..=50 {
                    assert!(f.eval(j as f64 / 50.0).unwrap() >= 0.0);
                }
            }
        }
    }

    #[test]
    fn on_shell_log_split_matches_direct_log() {
        let f = FeynmanMassFn::on_shell(0.7).unwrap();
        let (ln_a, k) = f.log_split().unwrap();
        assert_eq!(k, 2);
        for x in [0.01, 0.3, 0.99] {
            let direct = f.eval(x).unwrap().ln();
            assert!((direct - (ln_a + k as f64 * f64::ln(x))).abs() < 1e-13);
        }
        assert_eq!(FeynmanMassFn::new(0.0, 2.0).unwrap().log_split().unwrap().1, 1);
        assert!(FeynmanMassFn::new(0.5, 2.0).unwrap().log_split().is_none());
    }

    #[test]
    fn integrate_examples() {
        let r = |n, d| Rational::new(n, d);
        assert_eq!(PolyLogIntegrand::from_integers(&[2, 2], LogWeight::None).integrate(), r(3, 1));
        let doubled_log = PolyLogIntegrand::from_integers(&[2, 2], LogWeight::LnX).scaled(r(2, 1));
        assert_eq!(integrate_poly_log(&doubled_log), r(-5, 1));
        assert_eq!(PolyLogIntegrand::from_integers(&[1], LogWeight::LnX).integrate(), r(-1, 1));
        assert_eq!(PolyLogIntegrand::from_integers(&[], LogWeight::LnX).integrate(), r(0, 1));
    }

    #[test]
    fn log_weight_conversion() {
        assert_eq!(LogWeight::try_from(1).unwrap(), LogWeight::LnX);
        assert!(LogWeight::try_from(2).is_err());
    }
}
