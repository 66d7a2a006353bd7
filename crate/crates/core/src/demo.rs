//! End-to-end walkthrough: loop integral → derivative → closed form →
//! log form with `C₁` → on-shell mass shift → fixed scale, then the broken λΦ⁴
//! vacuum → one-loop coupling → mass-ratio invariant → resummation pole.
//! Every step is cross-checked against an independent route.

use crate::error::Result;
use crate::feynpar::{FeynmanMassFn, LogWeight, PolyLogIntegrand};
use crate::kernel::{Factor, Rational, ScalarLoopIntegral};
use crate::numeric::{bisect, minimize_on_half_line, Quadrature};
use crate::oracle::{asymptote_constant, divergence_signature, wick_rotated_radial, CutoffProbe, DivergenceClass};
use crate::phi4::{
    geometric_partial_sum, lambda_invariant_ratio, lambda_renormalized, ResummationState, ResummedCoupling,
    SsbPotential, HIGGS_REFERENCE,
};
use crate::qed::{
    lamb_shift_estimate, on_shell_mass_shift, on_shell_mass_shift_pipeline, pipeline_coefficients, solve_mu1,
    solve_mu1_numeric, BETHE_LOG_2S, ELECTRON_MASS_GEV, FINE_STRUCTURE,
};

#[derive(Debug, Clone, PartialEq)]
pub struct CheckOutcome {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

type Check = fn() -> Result<(bool, String)>;

const CHECKS: &[(&str, Check)] = &[
    ("superficial-degree", check_power_counting),
    ("derivative-prefactor", check_prefactor),
    ("convergent-closed-form", check_closed_form),
    ("log-form-with-constant", check_log_form),
    ("cutoff-independent-differences", check_asymptotes),
    ("mass-shift-coefficients", check_mass_shift_coefficients),
    ("mass-shift-two-routes", check_mass_shift_routes),
    ("on-shell-scale", check_mu1),
    ("lamb-shift-band", check_lamb_shift),
    ("broken-vacuum", check_vacuum),
    ("renormalized-coupling", check_coupling),
    ("invariant-ratio", check_invariant),
    ("resummation-pole", check_pole),
    ("higgs-reference", check_higgs),
];

/// Runs every cross-check in order.
pub fn walkthrough() -> Vec<CheckOutcome> {
    CHECKS
        .iter()
        .map(|&(name, check)| match check() {
            Ok((passed, detail)) => CheckOutcome { name, passed, detail },
            Err(e) => CheckOutcome { name, passed: false, detail: e.to_string() },
        })
        .collect()
}

fn check_power_counting() -> Result<(bool, String)> {
    let degrees: Vec<i32> = (1..=3).map(|n| ScalarLoopIntegral::new(n).map(|i| i.superficial_degree())).collect::<Result<_>>()?;
    let probe = CutoffProbe::decades(2, 1.0, 2, 5)?;
    let sig = divergence_signature(&probe)?;
    let ok = degrees == [2, 0, -2] && sig.class == DivergenceClass::Log && (sig.coefficient - 1.0).abs() < 0.01;
    Ok((ok, format!("D = {degrees:?}; n=2 sweep {} with slope {:.6}", sig.class.as_str(), sig.coefficient)))
}

fn check_prefactor() -> Result<(bool, String)> {
    let (raised, prefactor) = ScalarLoopIntegral::new(2)?.differentiate_in_mass_sq(1);
    let ok = raised.power() == 3 && prefactor == Rational::from_integer(2) && raised.is_convergent();
    Ok((ok, format!("∂/∂M² I₂ = {prefactor}·I₃")))
}

fn check_closed_form() -> Result<(bool, String)> {
    let (raised, prefactor) = ScalarLoopIntegral::new(2)?.differentiate_in_mass_sq(1);
    let closed = raised.evaluate_convergent()?.scaled(prefactor);
    let exact = closed.coefficient(Factor::Plain, -1) == Rational::from_integer(-1) && closed.terms().len() == 1;
    let mut worst = 0.0f64;
    for m_sq in [0.5, 1.0, 2.0] {
        let oracle = wick_rotated_radial(3, m_sq, 1e6 * f64::sqrt(m_sq))?;
        let kernel = ScalarLoopIntegral::with_mass_sq(3, m_sq)?.numeric_value()?;
        worst = worst.max(rel(kernel, oracle));
    }
    Ok((exact && worst < 1e-8, format!("{closed}; worst oracle deviation {worst:.2e}")))
}

fn check_log_form() -> Result<(bool, String)> {
    let value = ScalarLoopIntegral::new(2)?.regularize();
    let (raised, prefactor) = ScalarLoopIntegral::new(2)?.differentiate_in_mass_sq(1);
    let round_trip = value.derivative().terms() == raised.evaluate_convergent()?.scaled(prefactor).terms();
    let mu = 1.7;
    let at_scale = value.with_scale(1, mu)?.evaluate(mu * mu)?;
    let ok = round_trip && value.constants().unfixed_count() == 1 && at_scale == 0.0;
    Ok((ok, format!("{value}; vanishes at M² = μ₁²")))
}

fn check_asymptotes() -> Result<(bool, String)> {
    let (a, b) = (0.5, 2.0);
    let la = asymptote_constant(&CutoffProbe::decades(2, a, 1, 5)?)?;
    let lb = asymptote_constant(&CutoffProbe::decades(2, b, 1, 5)?)?;
    let diff = la - lb;
    let expected = -0.5 * (a / b).ln();
    Ok(((diff - expected).abs() < 1e-6, format!("difference {diff:.9} vs {expected:.9}")))
}

fn check_mass_shift_coefficients() -> Result<(bool, String)> {
    let c = pipeline_coefficients();
    let exact = c.constant == Rational::from_integer(5) && c.log == Rational::from_integer(-3);
    // numeric x-integration of −(2 + 2x)(L + ln x²) for several L; the
    // integral vanishes at L = 5/3, so the tolerance needs an absolute floor
    let quad = Quadrature { abs_tol: 1e-12, ..Quadrature::default() };
    let mass_fn = FeynmanMassFn::on_shell(1.0)?;
    let mut worst = 0.0f64;
    for l in [0.0, 1.0, 5.0 / 3.0] {
        let v = quad
            .integrate(|x| -(2.0 + 2.0 * x) * (l + mass_fn.eval(x).map_or(f64::NAN, f64::ln)), 0.0, 1.0)?
            .value;
        worst = worst.max((v - (5.0 - 3.0 * l)).abs());
    }
    let sanity = PolyLogIntegrand::from_integers(&[2, 2], LogWeight::LnX).integrate() * Rational::from_integer(2)
        == Rational::from_integer(-5);
    Ok((exact && sanity && worst < 1e-9, format!("({}, {}); quadrature deviation {worst:.2e}", c.constant, c.log)))
}

fn check_mass_shift_routes() -> Result<(bool, String)> {
    let m = ELECTRON_MASS_GEV;
    let mut worst = 0.0f64;
    for mu1 in [m, 0.3 * m, 4.0 * m] {
        let a = on_shell_mass_shift(m, FINE_STRUCTURE, mu1)?.delta_m;
        let b = on_shell_mass_shift_pipeline(m, FINE_STRUCTURE, mu1)?.delta_m;
        worst = worst.max((a - b).abs() / a.abs());
    }
    Ok((worst < 1e-12, format!("relative disagreement {worst:.2e}")))
}

fn check_mu1() -> Result<(bool, String)> {
    let m = ELECTRON_MASS_GEV;
    let mu1 = solve_mu1(m)?;
    let closed = rel(mu1 / m, (-5.0f64 / 6.0).exp());
    let mut spread = 0.0f64;
    for alpha in [FINE_STRUCTURE, 0.1, 0.3] {
        spread = spread.max(rel(solve_mu1_numeric(m, alpha)?, mu1));
    }
    let residual = on_shell_mass_shift(m, FINE_STRUCTURE, mu1)?.delta_m;
    let ok = closed < 1e-12 && spread < 1e-12 && residual.abs() < 1e-12 * m;
    Ok((ok, format!("μ₁/m = {:.12}; root-finder spread {spread:.2e}", mu1 / m)))
}

fn check_lamb_shift() -> Result<(bool, String)> {
    let v = lamb_shift_estimate(FINE_STRUCTURE, 0.000511, BETHE_LOG_2S)?;
    Ok(((900.0..=1100.0).contains(&v), format!("{v:.1} MHz")))
}

fn check_vacuum() -> Result<(bool, String)> {
    let mut worst = 0.0f64;
    for (sigma, lambda) in [(1.0, 6.0), (2.0, 6.0), (0.3, 0.05), (150.0, 2.0)] {
        let p = SsbPotential::new(sigma, lambda)?;
        let poly = p.as_quartic().as_polynomial();
        let dpoly = poly.derivative();
        let found = minimize_on_half_line(|x| poly.eval(x), |x| dpoly.eval(x), 512)?;
        worst = worst.max(rel(found, p.vacuum().phi1));
    }
    Ok((worst < 1e-8, format!("numeric minimum vs Φ₁: {worst:.2e}")))
}

fn check_coupling() -> Result<(bool, String)> {
    let at_one = lambda_renormalized(1.0)?;
    let expected = 1.0 + 9.0 / (32.0 * std::f64::consts::PI.powi(2));
    let finite = (1..=100).map(|k| lambda_renormalized(k as f64 * 0.1)).collect::<Result<Vec<_>>>()?;
    let ok = rel(at_one, expected) < 1e-12 && finite.iter().all(|v| v.is_finite() && *v > 0.0);
    Ok((ok, format!("λ_R(1) = {at_one:.10}")))
}

fn check_invariant() -> Result<(bool, String)> {
    let mut worst = 0.0f64;
    for sigma in [0.1, 1.0, 25.0] {
        for lambda in [0.01, 0.5, 6.0] {
            let v = SsbPotential::new(sigma, lambda)?.vacuum();
            worst = worst.max(rel(lambda_invariant_ratio(v.m_sigma, v.phi1)?, lambda));
        }
    }
    Ok((worst < 1e-12, format!("max relative deviation {worst:.2e}")))
}

fn check_pole() -> Result<(bool, String)> {
    let state = ResummationState::with_default_beta(1.0, 1.0)?;
    let mu_c = state.critical_scale();
    // bisect on ln μ for the finite → pole transition
    let indicator = |y: f64| match state.resum_chain(y.exp()) {
        Ok(ResummedCoupling::Finite(_)) => -1.0,
        Ok(ResummedCoupling::Pole) => 1.0,
        Err(_) => f64::NAN,
    };
    let located = bisect(indicator, 0.0, 2.0 * mu_c.ln())?.exp();
    let truncations_finite = state.truncated(mu_c, 1)?.is_finite()
        && geometric_partial_sum(1.0, 1_000).is_finite()
        && state.truncated(mu_c * 10.0, 20)?.is_finite();
    let ok = rel(located, mu_c) < 1e-9 && truncations_finite;
    Ok((ok, format!("μ_c = {mu_c:.6e} GeV, bisection {located:.6e}")))
}

fn check_higgs() -> Result<(bool, String)> {
    let h = HIGGS_REFERENCE;
    let ok = h.is_ordered() && (h.lower_bound, h.predicted, h.upper_bound) == (76.0, 138.0, 170.0);
    Ok((ok, format!("{} < {} < {} GeV (reference values)", h.lower_bound, h.predicted, h.upper_bound)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_check_passes() {
        for c in walkthrough() {
            assert!(c.passed, "{}: {}", c.name, c.detail);
        }
    }
}
