//! Acceptance gate. Runs every criterion, prints one line each, and exits
//! non-zero if any fails.

use std::f64::consts::{E, PI};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use loopreg::kernel::{Factor, Rational, ScalarLoopIntegral};
use loopreg::numeric::{minimize_on_half_line, Quadrature};
use loopreg::oracle::{asymptote_constant, wick_rotated_radial, CutoffProbe};
use loopreg::phi4::{
    geometric_partial_sum, lambda_invariant_ratio, lambda_renormalized, ResummationState, ResummedCoupling,
    SsbPotential, HIGGS_REFERENCE,
};
use loopreg::qed::{
    lamb_shift_estimate, pipeline_coefficients, solve_mu1, solve_mu1_numeric, BETHE_LOG_2S, FINE_STRUCTURE,
    LAMB_SHIFT_MEASURED_MHZ, LAMB_SHIFT_QUICK_ESTIMATE_MHZ,
};

type Verdict = Result<String, String>;
type Criterion = (&'static str, fn() -> Verdict);

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

fn ensure(ok: bool, detail: String) -> Verdict {
    if ok {
        Ok(detail)
    } else {
        Err(detail)
    }
}

fn within(elapsed: Duration, limit: Duration, detail: String) -> Verdict {
    ensure(elapsed < limit, format!("{detail}; {:.3}s (limit {:.0}s)", elapsed.as_secs_f64(), limit.as_secs_f64()))
}

/// Derivative of the logarithmic integral: exact −1/M², and the cutoff oracle
/// at Λ = 10⁶√M² within 1e-8.
fn c1_closed_form() -> Verdict {
    let start = Instant::now();
    let (raised, prefactor) = ScalarLoopIntegral::new(2).unwrap().differentiate_in_mass_sq(1);
    let closed = raised.evaluate_convergent().unwrap().scaled(prefactor);
    if closed.terms().len() != 1 || closed.coefficient(Factor::Plain, -1) != Rational::from_integer(-1) {
        return Err(format!("closed form {closed} is not −i/(16π²M²)"));
    }
    let mut worst = 0.0f64;
    for m_sq in [0.5, 1.0, 2.0] {
        let kernel = 2.0 * ScalarLoopIntegral::with_mass_sq(3, m_sq).unwrap().numeric_value().unwrap();
        let oracle = 2.0 * wick_rotated_radial(3, m_sq, 1e6 * m_sq.sqrt()).map_err(|e| e.to_string())?;
        if rel(kernel, -1.0 / m_sq) > 1e-15 {
            return Err(format!("kernel value {kernel} at M² = {m_sq}"));
        }
        worst = worst.max(rel(kernel, oracle));
    }
    if worst >= 1e-8 {
        return Err(format!("oracle deviation {worst:e}"));
    }
    within(start.elapsed(), Duration::from_secs(1), format!("{closed}, oracle deviation {worst:.2e}"))
}

/// Asymptote differences reproduce −½ ln(M²_a/M²_b).
fn c2_log_structure() -> Verdict {
    let mut details = Vec::new();
    for (a, b) in [(0.5, 2.0), (1.0, E * E), (1.0, 10.0)] {
        let start = Instant::now();
        let la = asymptote_constant(&CutoffProbe::decades(2, a, 1, 5).unwrap()).map_err(|e| e.to_string())?;
        let lb = asymptote_constant(&CutoffProbe::decades(2, b, 1, 5).unwrap()).map_err(|e| e.to_string())?;
        let elapsed = start.elapsed();
        let err = ((la - lb) - (-0.5 * (a / b).ln())).abs();
        if err >= 1e-6 || elapsed >= Duration::from_secs(5) {
            return Err(format!("pair ({a}, {b}): error {err:e} in {:.3}s", elapsed.as_secs_f64()));
        }
        details.push(format!("{err:.1e}"));
    }
    Ok(format!("pair errors [{}]", details.join(", ")))
}

/// Mass-shift coefficients exactly (5, −3); numeric x-quadrature to 1e-9.
fn c3_mass_shift_coefficients() -> Verdict {
    let c = pipeline_coefficients();
    if (c.constant, c.log) != (Rational::from_integer(5), Rational::from_integer(-3)) {
        return Err(format!("got ({}, {})", c.constant, c.log));
    }
    let quad = Quadrature { abs_tol: 1e-13, ..Quadrature::default() };
    let mut worst = 0.0f64;
    for l in [0.0, 1.0, 5.0 / 3.0, -2.0] {
        // −∫(2 + 2x)(L + ln x²) dx: the on-shell numerator against ln(M²/μ₁²)
        let v = quad
            .integrate(|x| -(2.0 + 2.0 * x) * (l + (x * x).ln()), 0.0, 1.0)
            .map_err(|e| e.to_string())?
            .value;
        worst = worst.max((v - (5.0 - 3.0 * l)).abs());
    }
    ensure(worst < 1e-9, format!("(5, −3) exact; quadrature deviation {worst:.2e}"))
}

/// μ₁/m = e^(−5/6) to 1e-12; root-finder agrees, independent of α.
fn c4_scale() -> Verdict {
    let expected = (-5.0f64 / 6.0).exp();
    if (expected - 0.434_598_208_507).abs() > 1e-12 {
        return Err("reference constant drifted".into());
    }
    let mut worst = 0.0f64;
    for m in [0.000_511, 1.0, 105.66e-3, 173.0] {
        let closed = solve_mu1(m).unwrap();
        worst = worst.max(rel(closed / m, expected));
        for alpha in [FINE_STRUCTURE, 0.1, 0.3] {
            let root = solve_mu1_numeric(m, alpha).map_err(|e| e.to_string())?;
            worst = worst.max(rel(root, closed));
        }
    }
    ensure(worst < 1e-12, format!("μ₁/m = {expected:.12}, worst deviation {worst:.2e}"))
}

/// Leading-log Lamb shift lands in [900, 1100] MHz.
fn c5_lamb_shift() -> Verdict {
    let v = lamb_shift_estimate(FINE_STRUCTURE, 0.000_511, BETHE_LOG_2S).unwrap();
    let band = 900.0..=1100.0;
    let brackets = band.contains(&LAMB_SHIFT_QUICK_ESTIMATE_MHZ) && band.contains(&LAMB_SHIFT_MEASURED_MHZ);
    ensure(band.contains(&v) && brackets, format!("{v:.2} MHz (quoted 997, measured 1057.8)"))
}

/// Ratio ∘ vacuum = λ on a 10×10 grid; numeric minimum of V matches Φ₁.
fn c6_vacuum() -> Verdict {
    let grid = |lo: f64, hi: f64| (0..10).map(move |i| lo * (hi / lo).powf(i as f64 / 9.0));
    let (mut ratio_err, mut min_err) = (0.0f64, 0.0f64);
    for sigma in grid(1e-2, 1e4) {
        for lambda in grid(1e-2, 10.0) {
            let p = SsbPotential::new(sigma, lambda).unwrap();
            let v = p.vacuum();
            ratio_err = ratio_err.max(rel(lambda_invariant_ratio(v.m_sigma, v.phi1).unwrap(), lambda));
            let poly = p.as_quartic().as_polynomial();
            let dpoly = poly.derivative();
            let phi = minimize_on_half_line(|x| poly.eval(x), |x| dpoly.eval(x), 1000).map_err(|e| e.to_string())?;
            min_err = min_err.max(rel(phi, v.phi1));
        }
    }
    ensure(ratio_err < 1e-12 && min_err < 1e-8, format!("ratio {ratio_err:.2e}, minimizer {min_err:.2e}"))
}

/// λ_R(1) = 1 + 9/(32π²); finite and nonzero on (0, 10].
fn c7_coupling() -> Verdict {
    let v = lambda_renormalized(1.0).unwrap();
    let expected = 1.0 + 9.0 / (32.0 * PI * PI);
    let all_regular = (1..=1000).all(|k| {
        let r = lambda_renormalized(k as f64 * 0.01).unwrap();
        r.is_finite() && r > 0.0
    });
    ensure(rel(v, expected) < 1e-12 && all_regular, format!("λ_R(1) = {v:.12}"))
}

/// Truncations finite; resummed pole bracketed at the critical scale.
fn c8_singularity() -> Verdict {
    let finite = [10u64, 1_000, 1_000_000].iter().all(|&n| geometric_partial_sum(1.0, n) == n as f64 + 1.0);
    if !finite {
        return Err("partial sum at r = 1 is not n + 1".into());
    }
    let mut worst = 0.0f64;
    for lambda0 in [0.5, 1.0, 5.0, 40.0] {
        let state = ResummationState::with_default_beta(lambda0, 91.0).unwrap();
        let mu_c = state.critical_scale();
        if !state.first_order(mu_c * 1e3).unwrap().is_finite() || !state.truncated(mu_c * 1e3, 30).unwrap().is_finite()
        {
            return Err(format!("truncation diverged for λ₀ = {lambda0}"));
        }
        // independent bisection in ln μ on the finite/pole indicator
        let is_pole = |y: f64| state.resum_chain(y.exp()).unwrap() == ResummedCoupling::Pole;
        let (mut lo, mut hi) = (91f64.ln(), 91f64.ln() + 1.0);
        while !is_pole(hi) {
            hi += (hi - lo) * 2.0;
        }
        while hi - lo > 1e-14 * hi.abs() {
            let mid = 0.5 * (lo + hi);
            if is_pole(mid) {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        worst = worst.max(rel(0.5 * (lo + hi), mu_c.ln()).max(rel((0.5 * (lo + hi)).exp(), mu_c)));
    }
    ensure(worst < 1e-9, format!("pole vs critical scale {worst:.2e}"))
}

/// Reference Higgs values echo 76 < 138 < 170 GeV.
fn c9_higgs() -> Verdict {
    let h = HIGGS_REFERENCE;
    let echoed = (h.lower_bound, h.predicted, h.upper_bound) == (76.0, 138.0, 170.0);
    ensure(echoed && h.is_ordered(), format!("{} < {} < {} GeV", h.lower_bound, h.predicted, h.upper_bound))
}

/// `loopreg demo` exits 0 within 30 s.
fn c10_demo() -> Verdict {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_loopreg")).arg("demo").output().map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    let text = String::from_utf8_lossy(&out.stdout);
    if out.status.code() != Some(0) || !text.contains("\"all_passed\": \"true\"") {
        return Err(format!("exit {:?}: {}", out.status.code(), String::from_utf8_lossy(&out.stderr)));
    }
    within(elapsed, Duration::from_secs(30), "all cross-checks pass".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("closed form of the differentiated log integral", c1_closed_form),
        ("cutoff-independent log differences", c2_log_structure),
        ("on-shell mass-shift coefficients", c3_mass_shift_coefficients),
        ("on-shell scale μ₁", c4_scale),
        ("Lamb-shift band", c5_lamb_shift),
        ("broken vacuum and invariant ratio", c6_vacuum),
        ("one-loop renormalized coupling", c7_coupling),
        ("finite truncations vs resummation pole", c8_singularity),
        ("Higgs reference values", c9_higgs),
        ("demo walkthrough", c10_demo),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {detail}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
