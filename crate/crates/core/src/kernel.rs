//! Scalar one-loop integrals `I_n(M²) = ∫ d⁴K/(2π)⁴ (K² − M²)^(−n)` and the
//! differentiate / evaluate / integrate-back reduction.
//!
//! Every closed form is held as an exact rational multiple of the unit
//! `i/(16π²)`. Divergent members of the family are differentiated in M² until
//! power counting makes them convergent, evaluated in closed form, and then
//! antidifferentiated the same number of times. Each antiderivative leaves
//! behind an arbitrary constant that is recorded in a [`ConstantLedger`] and
//! only acquires a value once a physical condition fixes it.
//!
//! The loop momentum `K` is always the shifted one, `K = k − x p`.

use std::cmp::Ordering;
use std::f64::consts::PI;
use std::fmt;

use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

use crate::error::{require_positive, Error, Result};

/// Exact coefficient type used throughout the symbolic layer.
pub type Rational = Ratio<i64>;

/// Numeric size of the unit `1/(16π²)` (the factor `i` is kept implicit).
pub const UNIT_MAGNITUDE: f64 = 1.0 / (16.0 * PI * PI);

/// A member of the family `∫ d⁴K/(2π)⁴ (K² − M²)^(−n)`.
///
/// `mass_sq` is `None` while the integral is used symbolically in M².
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScalarLoopIntegral {
    power: u32,
    mass_sq: Option<f64>,
}

impl ScalarLoopIntegral {
    /// Symbolic integral with denominator power `power ≥ 1`.
    pub fn new(power: u32) -> Result<Self> {
        if power == 0 {
            return Err(Error::InvalidInput("denominator power must be at least 1".into()));
        }
        Ok(ScalarLoopIntegral { power, mass_sq: None })
    }

    /// Integral at a concrete `M² > 0` (GeV²).
    pub fn with_mass_sq(power: u32, mass_sq: f64) -> Result<Self> {
        let mut integral = Self::new(power)?;
        integral.mass_sq = Some(require_positive("M²", mass_sq)?);
        Ok(integral)
    }

    pub fn power(&self) -> u32 {
        self.power
    }

    pub fn mass_sq(&self) -> Option<f64> {
        self.mass_sq
    }

    /// Power-counting degree `D = 4 − 2n`; `D ≥ 0` diverges.
    pub fn superficial_degree(&self) -> i32 {
        4 - 2 * self.power as i32
    }

    pub fn is_convergent(&self) -> bool {
        self.superficial_degree() < 0
    }

    /// Smallest number of M² derivatives that makes the integral convergent.
    pub fn differentiation_count(&self) -> u32 {
        3u32.saturating_sub(self.power)
    }

    /// Differentiates `times` times in M².
    ///
    /// Each derivative maps `(K² − M²)^(−n)` to `n (K² − M²)^(−n−1)`, so the
    /// result is `prefactor · I_{n+times}` with
    /// `prefactor = n (n+1) ⋯ (n+times−1)`.
    pub fn differentiate_in_mass_sq(&self, times: u32) -> (ScalarLoopIntegral, Rational) {
        let prefactor = (self.power..self.power + times)
            .fold(Rational::one(), |acc, k| acc * Rational::from_integer(k as i64));
        let raised = ScalarLoopIntegral { power: self.power + times, mass_sq: self.mass_sq };
        (raised, prefactor)
    }

    /// Closed form of a convergent member, `n ≥ 3`:
    ///
    /// `I_n = i (−1)^n / (16π²) · 1 / ((n−1)(n−2)) · (M²)^(2−n)`.
    ///
    /// After Wick rotation the Euclidean radial integral is
    /// `∫₀^∞ k³ (k² + M²)^(−n) dk = (M²)^(2−n) / (2 (n−1)(n−2))` and the angular
    /// volume `2π²` over `(2π)⁴` contributes `1/(8π²)`.
    pub fn evaluate_convergent(&self) -> Result<RegularizedValue> {
        if !self.is_convergent() {
            return Err(Error::StillDivergent { power: self.power });
        }
        let n = self.power as i64;
        let sign = if n % 2 == 0 { 1 } else { -1 };
        let coeff = Rational::new(sign, (n - 1) * (n - 2));
        Ok(RegularizedValue::from_terms(vec![Term::plain(coeff, 2 - n as i32)], ConstantLedger::default()))
    }

    /// Full reduction: differentiate to convergence, evaluate, integrate back.
    ///
    /// For `n = 2` this yields `−i/(16π²) (ln M² + C₁)`; convergent inputs pass
    /// straight through `evaluate_convergent` with an empty ledger.
    pub fn regularize(&self) -> RegularizedValue {
        let times = self.differentiation_count();
        let (raised, prefactor) = self.differentiate_in_mass_sq(times);
        let derivative = raised
            .evaluate_convergent()
            .expect("differentiation_count always reaches a convergent power")
            .scaled(prefactor);
        // for t > 0 the raised power is exactly 3, so the derivative is c/M² and
        // every antiderivative below stays in the supported term algebra
        derivative
            .integrate_back(times)
            .expect("antiderivatives of c/M² are always representable")
    }

    /// Numeric value in units of `i/(16π²)`; requires a concrete M² and a
    /// convergent power.
    pub fn numeric_value(&self) -> Result<f64> {
        let mass_sq = self
            .mass_sq
            .ok_or_else(|| Error::InvalidInput("integral has no numeric M²".into()))?;
        self.evaluate_convergent()?.evaluate(mass_sq)
    }
}

/// What multiplies `coeff · (M²)^p` in a [`Term`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Factor {
    /// nothing
    Plain,
    /// `ln M²`
    Log,
    /// the arbitrary constant `C_i`
    Constant(usize),
}

impl Factor {
    fn rank(&self) -> (u8, usize) {
        match *self {
            Factor::Log => (0, 0),
            Factor::Plain => (1, 0),
            Factor::Constant(i) => (2, i),
        }
    }
}

/// `coeff · (M²)^mass_sq_power · factor`, in units of `i/(16π²)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Term {
    pub coeff: Rational,
    pub mass_sq_power: i32,
    pub factor: Factor,
}

impl Term {
    pub fn plain(coeff: Rational, mass_sq_power: i32) -> Self {
        Term { coeff, mass_sq_power, factor: Factor::Plain }
    }

    pub fn log(coeff: Rational, mass_sq_power: i32) -> Self {
        Term { coeff, mass_sq_power, factor: Factor::Log }
    }

    pub fn constant(coeff: Rational, mass_sq_power: i32, index: usize) -> Self {
        Term { coeff, mass_sq_power, factor: Factor::Constant(index) }
    }

    pub fn has_log_factor(&self) -> bool {
        self.factor == Factor::Log
    }

    fn order(&self, other: &Self) -> Ordering {
        self.factor
            .rank()
            .cmp(&other.factor.rank())
            .then(other.mass_sq_power.cmp(&self.mass_sq_power))
    }
}

/// Fixing state of an arbitrary constant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ConstantStatus {
    Unfixed,
    Fixed(f64),
}

/// One arbitrary constant `C_i` left behind by an antiderivative.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ArbitraryConstant {
    pub index: usize,
    /// Mass dimension of `C_i` itself (even; zero for the logarithmic case).
    pub mass_dimension: i32,
    pub status: ConstantStatus,
    /// `μ_i` with `C_i = −ln μ_i²`, only for dimensionless constants.
    pub scale_alias: Option<f64>,
}

/// Ordered record of arbitrary constants, indexed consecutively from 1.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct ConstantLedger {
    entries: Vec<ArbitraryConstant>,
}

impl ConstantLedger {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &ArbitraryConstant> {
        self.entries.iter()
    }

    pub fn get(&self, index: usize) -> Option<&ArbitraryConstant> {
        index.checked_sub(1).and_then(|i| self.entries.get(i))
    }

    pub fn unfixed_count(&self) -> usize {
        self.entries.iter().filter(|c| c.status == ConstantStatus::Unfixed).count()
    }

    fn push_unfixed(&mut self, mass_dimension: i32) -> usize {
        let index = self.entries.len() + 1;
        self.entries.push(ArbitraryConstant {
            index,
            mass_dimension,
            status: ConstantStatus::Unfixed,
            scale_alias: None,
        });
        index
    }

    fn entry_mut(&mut self, index: usize) -> Result<&mut ArbitraryConstant> {
        index
            .checked_sub(1)
            .and_then(|i| self.entries.get_mut(i))
            .ok_or(Error::UnknownConstant(index))
    }

    /// Fixes `C_i` to a plain value (clears any scale alias).
    pub fn fix(&mut self, index: usize, value: f64) -> Result<()> {
        if !value.is_finite() {
            return Err(Error::InvalidInput(format!("C{index} must be finite")));
        }
        let entry = self.entry_mut(index)?;
        entry.status = ConstantStatus::Fixed(value);
        entry.scale_alias = None;
        Ok(())
    }

    /// Fixes a dimensionless `C_i` through its scale, `C_i = −ln μ²`.
    pub fn fix_by_scale(&mut self, index: usize, mu: f64) -> Result<()> {
        require_positive("μ", mu)?;
        let entry = self.entry_mut(index)?;
        if entry.mass_dimension != 0 {
            return Err(Error::InvalidInput(format!(
                "C{index} has mass dimension {} and cannot be written as −ln μ²",
                entry.mass_dimension
            )));
        }
        entry.status = ConstantStatus::Fixed(-(mu * mu).ln());
        entry.scale_alias = Some(mu);
        Ok(())
    }

    fn value(&self, index: usize) -> Result<f64> {
        match self.get(index).ok_or(Error::UnknownConstant(index))?.status {
            ConstantStatus::Fixed(v) => Ok(v),
            ConstantStatus::Unfixed => Err(Error::UnfixedConstant(index)),
        }
    }
}

/// Closed-form output of the reduction: a sum of [`Term`]s plus the ledger of
/// constants introduced along the way.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct RegularizedValue {
    terms: Vec<Term>,
    constants: ConstantLedger,
}

impl RegularizedValue {
    /// Builds a value in canonical form (like terms merged, zeros dropped).
    pub fn from_terms(terms: Vec<Term>, constants: ConstantLedger) -> Self {
        let mut merged: Vec<Term> = Vec::with_capacity(terms.len());
        for term in terms {
            match merged
                .iter_mut()
                .find(|t| t.factor == term.factor && t.mass_sq_power == term.mass_sq_power)
            {
                Some(existing) => existing.coeff += term.coeff,
                None => merged.push(term),
            }
        }
        merged.retain(|t| !t.coeff.is_zero());
        merged.sort_by(|a, b| a.order(b));
        RegularizedValue { terms: merged, constants }
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn constants(&self) -> &ConstantLedger {
        &self.constants
    }

    /// Coefficient of `(M²)^power · ln M²`, zero if absent.
    pub fn log_coefficient(&self, power: i32) -> Rational {
        self.coefficient(Factor::Log, power)
    }

    pub fn coefficient(&self, factor: Factor, power: i32) -> Rational {
        self.terms
            .iter()
            .find(|t| t.factor == factor && t.mass_sq_power == power)
            .map_or_else(Rational::zero, |t| t.coeff)
    }

    pub fn scaled(&self, factor: Rational) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|t| Term { coeff: t.coeff * factor, ..*t })
            .collect();
        Self::from_terms(terms, self.constants.clone())
    }

    /// Symbolic derivative in M². Constants survive in the ledger but drop out
    /// of the terms once differentiated away.
    pub fn derivative(&self) -> Self {
        let mut out = Vec::with_capacity(self.terms.len() * 2);
        for t in &self.terms {
            let p = t.mass_sq_power;
            let dp = Rational::from_integer(p as i64);
            match t.factor {
                Factor::Log => {
                    out.push(Term::log(t.coeff * dp, p - 1));
                    out.push(Term::plain(t.coeff, p - 1));
                }
                other => out.push(Term { coeff: t.coeff * dp, mass_sq_power: p - 1, factor: other }),
            }
        }
        Self::from_terms(out, self.constants.clone())
    }

    /// Applies the indefinite M² integral `times` times.
    ///
    /// Each pass appends one unfixed constant whose coefficient is the leading
    /// coefficient of the integrand and whose mass dimension keeps the result
    /// homogeneous.
    pub fn integrate_back(&self, times: u32) -> Result<Self> {
        let mut value = self.clone();
        for _ in 0..times {
            value = value.integrate_once()?;
        }
        Ok(value)
    }

    fn integrate_once(&self) -> Result<Self> {
        let leading = self
            .terms
            .iter()
            .find(|t| !matches!(t.factor, Factor::Constant(_)))
            .map_or_else(Rational::one, |t| t.coeff);
        let mut out = Vec::with_capacity(self.terms.len() + 2);
        for t in &self.terms {
            let p = t.mass_sq_power;
            if p == -1 {
                match t.factor {
                    Factor::Plain => {
                        out.push(Term::log(t.coeff, 0));
                        continue;
                    }
                    Factor::Log => return Err(Error::Unsupported("∫ ln M² / M² dM² needs ln² M²".into())),
                    Factor::Constant(i) => {
                        return Err(Error::Unsupported(format!("∫ C{i} / M² dM² needs C{i}·ln M²")))
                    }
                }
            }
            let q = Rational::from_integer(p as i64 + 1);
            match t.factor {
                Factor::Log => {
                    out.push(Term::log(t.coeff / q, p + 1));
                    out.push(Term::plain(-t.coeff / (q * q), p + 1));
                }
                other => out.push(Term { coeff: t.coeff / q, mass_sq_power: p + 1, factor: other }),
            }
        }
        let mut constants = self.constants.clone();
        let dimension = out
            .iter()
            .filter(|t| !t.coeff.is_zero())
            .map(|t| {
                let own = match t.factor {
                    Factor::Constant(i) => constants.get(i).map_or(0, |c| c.mass_dimension),
                    _ => 0,
                };
                2 * t.mass_sq_power + own
            })
            .max()
            .unwrap_or(0);
        let index = constants.push_unfixed(dimension);
        out.push(Term::constant(leading, 0, index));
        Ok(Self::from_terms(out, constants))
    }

    /// Returns a copy with `C_i` fixed to `value`.
    pub fn with_constant(&self, index: usize, value: f64) -> Result<Self> {
        let mut out = self.clone();
        out.constants.fix(index, value)?;
        Ok(out)
    }

    /// Returns a copy with dimensionless `C_i = −ln μ²`.
    pub fn with_scale(&self, index: usize, mu: f64) -> Result<Self> {
        let mut out = self.clone();
        out.constants.fix_by_scale(index, mu)?;
        Ok(out)
    }

    /// Numeric value at `M²`, in units of `i/(16π²)`. Every constant appearing
    /// in a term must be fixed.
    pub fn evaluate(&self, mass_sq: f64) -> Result<f64> {
        if !(mass_sq.is_finite() && mass_sq >= 0.0) {
            return Err(Error::InvalidInput(format!("M² must be non-negative, got {mass_sq}")));
        }
        let mut sum = 0.0;
        for t in &self.terms {
            if mass_sq == 0.0 && (t.mass_sq_power < 0 || t.factor == Factor::Log) {
                return Err(Error::SingularMassSq);
            }
            let base = to_f64(t.coeff) * mass_sq.powi(t.mass_sq_power);
            sum += match t.factor {
                Factor::Plain => base,
                Factor::Log => base * mass_sq.ln(),
                Factor::Constant(i) => base * self.constants.value(i)?,
            };
        }
        Ok(sum)
    }
}

pub(crate) fn to_f64(r: Rational) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

fn render_term(t: &Term) -> String {
    let mut parts = Vec::new();
    let magnitude = t.coeff.abs();
    match t.factor {
        Factor::Plain => {}
        Factor::Log => parts.push("ln(M²)".to_string()),
        Factor::Constant(i) => parts.push(format!("C{i}")),
    }
    match t.mass_sq_power {
        0 => {}
        1 => parts.push("M²".to_string()),
        p => parts.push(format!("(M²)^{p}")),
    }
    if !magnitude.is_one() || parts.is_empty() {
        parts.insert(0, magnitude.to_string());
    }
    parts.join("·")
}

impl fmt::Display for RegularizedValue {
    /// Renders as `i/(16π²)·[ … ]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "i/(16π²)·[")?;
        if self.terms.is_empty() {
            write!(f, "0")?;
        }
        for (k, t) in self.terms.iter().enumerate() {
            match (k, t.coeff.is_negative()) {
                (0, true) => write!(f, "−")?,
                (0, false) => {}
                (_, true) => write!(f, " − ")?,
                (_, false) => write!(f, " + ")?,
            }
            write!(f, "{}", render_term(t))?;
        }
        write!(f, "]")
    }
}
