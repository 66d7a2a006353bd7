//! `loopreg` command-line front end.
//!
//! Every subcommand writes one report to standard output. Exit codes: 0 on
//! success, 2 for usage or validation errors, 3 for numeric failures
//! (quadrature tolerance missed, a pole where a finite value was requested,
//! a failed cross-check).

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};

use crate::demo::walkthrough;
use crate::error::{Error, Result};
use crate::kernel::{Factor, ScalarLoopIntegral, Term};
use crate::oracle::{asymptote_constant, divergence_signature, CutoffProbe};
use crate::phi4::{
    lambda_invariant_ratio, lambda_renormalized, ResummationState, ResummedCoupling, SsbPotential, VacuumPhase,
    DEFAULT_BETA_COEFF, HIGGS_REFERENCE,
};
use crate::qed::{
    lamb_shift_estimate, on_shell_mass_shift, on_shell_mass_shift_pipeline, pipeline_coefficients, solve_mu1,
    solve_mu1_numeric, BETHE_LOG_2S, ELECTRON_MASS_GEV, FINE_STRUCTURE, LAMB_SHIFT_MEASURED_MHZ,
    LAMB_SHIFT_QUICK_ESTIMATE_MHZ,
};
use crate::report::{ConfigFile, OutputFormat, ReportRecord, RunConfig, Table, Units, PRECISION_ENV};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NUMERIC: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "loopreg", version, about = "Regularize one-loop integrals by differentiation in M²")]
struct Cli {
    /// Mass unit for inputs and outputs
    #[arg(long, global = true, value_enum)]
    units: Option<Units>,
    /// Significant digits in rendered numbers (4–17)
    #[arg(long, global = true)]
    precision: Option<usize>,
    #[arg(long, global = true, value_enum)]
    format: Option<OutputFormat>,
    /// key=value file overriding defaults
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Reduce ∫d⁴K/(2π)⁴ (K²−M²)^(−n) to closed form with arbitrary constants
    Regularize {
        #[arg(long)]
        n: u32,
        /// M² for a numeric value (units²)
        #[arg(long)]
        msq: Option<f64>,
        /// fixes C₁ = −ln μ₁²
        #[arg(long)]
        mu1: Option<f64>,
    },
    /// On-shell electron self-energy mass shift
    Selfenergy {
        #[arg(long)]
        m: f64,
        #[arg(long)]
        alpha: Option<f64>,
        /// defaults to the scale where δm = 0
        #[arg(long)]
        mu1: Option<f64>,
    },
    /// Scale μ₁ fixed by δm = 0
    Mu1 {
        #[arg(long)]
        m: f64,
        #[arg(long)]
        alpha: Option<f64>,
    },
    /// Leading-log 2S½–2P½ splitting in MHz
    Lambshift {
        #[arg(long)]
        alpha: Option<f64>,
        #[arg(long)]
        m: Option<f64>,
        #[arg(long)]
        bethe_log: Option<f64>,
    },
    /// Broken-symmetry λΦ⁴ vacuum, one-loop coupling and invariant ratio
    Phi4 {
        /// wrong-sign mass parameter (units²)
        #[arg(long)]
        sigma: f64,
        #[arg(long)]
        lambda: f64,
    },
    /// Resummed chain coupling and its critical scale
    Resum {
        #[arg(long)]
        lambda0: f64,
        #[arg(long)]
        mu0: f64,
        #[arg(long)]
        b: Option<f64>,
        #[arg(long, conflicts_with_all = ["mu_min", "mu_max", "points"])]
        mu: Option<f64>,
        #[arg(long, requires = "mu_max")]
        mu_min: Option<f64>,
        #[arg(long, requires = "mu_min")]
        mu_max: Option<f64>,
        #[arg(long, default_value_t = 50)]
        points: usize,
    },
    /// Finite-cutoff quadrature of the loop integral over a Λ grid
    Oracle {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        msq: f64,
        /// comma-separated increasing cutoffs
        #[arg(long, value_delimiter = ',', required = true)]
        cutoffs: Vec<f64>,
        #[arg(long)]
        rel_tol: Option<f64>,
    },
    /// Full walkthrough with every cross-check
    Demo,
}

/// Runs with the process environment, writing to stdout/stderr.
pub fn main_entry() -> i32 {
    let env_precision = std::env::var(PRECISION_ENV).ok();
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with_env(std::env::args(), env_precision.as_deref(), &mut stdout.lock(), &mut stderr.lock())
}

/// Runs `argv` (program name first) with the process environment.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let env_precision = std::env::var(PRECISION_ENV).ok();
    run_with_env(argv, env_precision.as_deref(), out, err)
}

/// Runs `argv` with an explicit precision fallback in place of the environment.
pub fn run_with_env<I, T>(argv: I, env_precision: Option<&str>, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{rendered}");
                EXIT_USAGE
            } else {
                let _ = write!(out, "{rendered}");
                EXIT_OK
            };
        }
    };
    match execute(cli, env_precision) {
        Ok(Outcome { text, code }) => {
            let _ = write!(out, "{text}");
            code
        }
        Err(e) => {
            let _ = writeln!(err, "loopreg: {e}");
            if e.is_numeric() {
                EXIT_NUMERIC
            } else {
                EXIT_USAGE
            }
        }
    }
}

/// Rebuilds the argument vector that reproduces a JSON report.
pub fn argv_from_report(report: &ReportRecord) -> Vec<String> {
    let mut argv = vec!["loopreg".to_string(), report.subcommand.clone()];
    for (key, value) in &report.inputs {
        argv.push(format!("--{key}"));
        argv.push(value.clone());
    }
    argv
}

struct Outcome {
    text: String,
    code: i32,
}

/// Shortest exact rendering of an input for the echo.
fn echo(v: f64) -> String {
    format!("{v:?}")
}

struct Context {
    config: RunConfig,
    file: ConfigFile,
}

impl Context {
    fn param(&self, flag: Option<f64>, key: &str, default: f64) -> Result<f64> {
        match flag {
            Some(v) => Ok(v),
            None => Ok(self.file.get_f64(key)?.unwrap_or(default)),
        }
    }

    fn mass(&self, v: f64) -> f64 {
        self.config.units.to_gev(v, 1)
    }

    fn show_mass(&self, gev: f64) -> String {
        self.config.number(self.config.units.from_gev(gev, 1))
    }

    fn base_report(&self, name: &str) -> ReportRecord {
        let mut r = ReportRecord::new(name);
        r.input("units", self.config.units.name())
            .input("precision", self.config.precision)
            .input("format", self.config.format.name());
        r
    }
}

fn execute(cli: Cli, env_precision: Option<&str>) -> Result<Outcome> {
    let file = match &cli.config {
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::InvalidInput(format!("cannot read config {}: {e}", path.display())))?;
            ConfigFile::parse(&text)?
        }
        None => ConfigFile::default(),
    };
    let config = RunConfig::resolve(cli.units, cli.precision, cli.format, &file, env_precision)?;
    let ctx = Context { config, file };
    let (report, code) = match cli.command {
        Command::Regularize { n, msq, mu1 } => (regularize(&ctx, n, msq, mu1)?, EXIT_OK),
        Command::Selfenergy { m, alpha, mu1 } => self_energy(&ctx, m, alpha, mu1)?,
        Command::Mu1 { m, alpha } => (mu1_cmd(&ctx, m, alpha)?, EXIT_OK),
        Command::Lambshift { alpha, m, bethe_log } => (lamb_shift(&ctx, alpha, m, bethe_log)?, EXIT_OK),
        Command::Phi4 { sigma, lambda } => (phi4(&ctx, sigma, lambda)?, EXIT_OK),
        Command::Resum { lambda0, mu0, b, mu, mu_min, mu_max, points } => {
            (resum(&ctx, lambda0, mu0, b, mu, mu_min.zip(mu_max), points)?, EXIT_OK)
        }
        Command::Oracle { n, msq, cutoffs, rel_tol } => (oracle(&ctx, n, msq, cutoffs, rel_tol)?, EXIT_OK),
        Command::Demo => demo(&ctx),
    };
    Ok(Outcome { text: render(&ctx.config, &report)?, code })
}

fn render(config: &RunConfig, report: &ReportRecord) -> Result<String> {
    match config.format {
        OutputFormat::Json => Ok(report.to_json() + "\n"),
        OutputFormat::Csv | OutputFormat::PlotData => {
            let table = report.table.as_ref().ok_or_else(|| {
                Error::InvalidInput(format!(
                    "{} output is only available for sweeps (oracle, resum --mu-min/--mu-max)",
                    config.format.name()
                ))
            })?;
            Ok(if config.format == OutputFormat::Csv { table.to_csv() } else { table.to_plot_data() })
        }
    }
}

fn describe_term(t: &Term) -> (String, String) {
    let factor = match t.factor {
        Factor::Plain => String::new(),
        Factor::Log => "ln(M²)".to_string(),
        Factor::Constant(i) => format!("C{i}"),
    };
    let power = match t.mass_sq_power {
        0 => String::new(),
        1 => "M²".to_string(),
        p => format!("(M²)^{p}"),
    };
    let name = match (factor.is_empty(), power.is_empty()) {
        (true, true) => "1".to_string(),
        (false, true) => factor,
        (true, false) => power,
        (false, false) => format!("{factor}·{power}"),
    };
    let unit = "i/(16π²)";
    let value = if t.coeff == 1.into() {
        unit.to_string()
    } else if t.coeff == (-1).into() {
        format!("−{unit}")
    } else {
        format!("{}·{unit}", t.coeff)
    };
    (format!("{name} coefficient"), value)
}

fn regularize(ctx: &Context, n: u32, msq: Option<f64>, mu1: Option<f64>) -> Result<ReportRecord> {
    let integral = ScalarLoopIntegral::new(n)?;
    let mut r = ctx.base_report("regularize");
    r.input("n", n);
    let times = integral.differentiation_count();
    let (_, prefactor) = integral.differentiate_in_mass_sq(times);
    let mut value = integral.regularize();
    if let Some(mu) = mu1 {
        r.input("mu1", echo(mu));
        value = value.with_scale(1, mu)?;
    }
    r.output("superficial_degree", integral.superficial_degree().to_string(), "power counting 4 − 2n")
        .output("differentiation_count", times.to_string(), "derivatives in M² until convergent")
        .output("prefactor", prefactor.to_string(), "n(n+1)⋯(n+t−1) from repeated M² derivatives")
        .output("expression", value.to_string(), "differentiate, evaluate, integrate back");
    for t in value.terms() {
        let (key, text) = describe_term(t);
        r.output(&key, text, "exact rational coefficient");
    }
    if let Some(m_sq) = msq {
        r.input("msq", echo(m_sq));
        let m_sq_gev = ctx.config.units.to_gev(m_sq, 2);
        ScalarLoopIntegral::with_mass_sq(n, m_sq_gev)?;
        match value.evaluate(m_sq_gev) {
            Ok(v) => {
                // value carries mass dimension 4 − 2n
                let shown = ctx.config.units.from_gev(v, 4 - 2 * n as i32);
                r.output("value", ctx.config.number(shown), "closed form at M², units of i/(16π²)");
            }
            Err(Error::UnfixedConstant(i)) => {
                r.output("value", format!("undetermined: C{i} unfixed"), "derived");
            }
            Err(e) => return Err(e),
        }
    }
    r.set_ledger(value.constants(), &ctx.config);
    Ok(r)
}

fn self_energy(ctx: &Context, m: f64, alpha: Option<f64>, mu1: Option<f64>) -> Result<(ReportRecord, i32)> {
    let alpha = ctx.param(alpha, "alpha", FINE_STRUCTURE)?;
    let m_gev = ctx.mass(m);
    let mu1_gev = match mu1 {
        Some(mu) => ctx.mass(mu),
        None => solve_mu1(m_gev)?,
    };
    let direct = on_shell_mass_shift(m_gev, alpha, mu1_gev)?.delta_m;
    let pipeline = on_shell_mass_shift_pipeline(m_gev, alpha, mu1_gev)?.delta_m;
    let c = pipeline_coefficients();
    let mut r = ctx.base_report("selfenergy");
    r.input("m", echo(m)).input("alpha", echo(alpha));
    if let Some(mu) = mu1 {
        r.input("mu1", echo(mu));
    }
    r.output("mu1", ctx.show_mass(mu1_gev), if mu1.is_some() { "input" } else { "on-shell condition δm = 0" })
        .output("log_m2_over_mu1_2", ctx.config.number((m_gev / mu1_gev).powi(2).ln()), "derived")
        .output("delta_m", ctx.show_mass(direct), "on-shell mass shift (αm/4π)(5 − 3 ln(m²/μ₁²))")
        .output("delta_m_pipeline", ctx.show_mass(pipeline), "regularized loop integrated over x")
        .output("constant_coefficient", c.constant.to_string(), "exact x-integration")
        .output("log_coefficient", c.log.to_string(), "exact x-integration");
    let mut value = ScalarLoopIntegral::new(2)?.regularize();
    value = value.with_scale(1, ctx.config.units.from_gev(mu1_gev, 1))?;
    r.set_ledger(value.constants(), &ctx.config);
    let agree = (direct - pipeline).abs() <= 1e-12 * direct.abs().max(f64::MIN_POSITIVE) || direct == pipeline;
    r.output("routes_agree", agree.to_string(), "derived");
    Ok((r, if agree { EXIT_OK } else { EXIT_NUMERIC }))
}

fn mu1_cmd(ctx: &Context, m: f64, alpha: Option<f64>) -> Result<ReportRecord> {
    let alpha = ctx.param(alpha, "alpha", FINE_STRUCTURE)?;
    let m_gev = ctx.mass(m);
    let closed = solve_mu1(m_gev)?;
    let root = solve_mu1_numeric(m_gev, alpha)?;
    let mut r = ctx.base_report("mu1");
    r.input("m", echo(m)).input("alpha", echo(alpha));
    r.output("mu1", ctx.show_mass(closed), "μ₁ = e^(−5/6) m from δm = 0")
        .output("mu1_root_finder", ctx.show_mass(root), "bisection of δm(μ₁) = 0")
        .output("mu1_over_m", ctx.config.number(closed / m_gev), "derived");
    let value = ScalarLoopIntegral::new(2)?
        .regularize()
        .with_scale(1, ctx.config.units.from_gev(closed, 1))?;
    r.set_ledger(value.constants(), &ctx.config);
    Ok(r)
}

fn lamb_shift(ctx: &Context, alpha: Option<f64>, m: Option<f64>, bethe_log: Option<f64>) -> Result<ReportRecord> {
    let alpha = ctx.param(alpha, "alpha", FINE_STRUCTURE)?;
    let bethe_log = ctx.param(bethe_log, "bethe-log", BETHE_LOG_2S)?;
    let m_gev = m.map_or(ELECTRON_MASS_GEV, |m| ctx.mass(m));
    let shift = lamb_shift_estimate(alpha, m_gev, bethe_log)?;
    let mut r = ctx.base_report("lambshift");
    r.input("alpha", echo(alpha)).input("bethe-log", echo(bethe_log));
    r.input("m", echo(ctx.config.units.from_gev(m_gev, 1)));
    r.output("shift_mhz", ctx.config.number(shift), "leading-log 2S½–2P½ estimate (Bethe logarithm input)")
        .output("quick_estimate_mhz", ctx.config.number(LAMB_SHIFT_QUICK_ESTIMATE_MHZ), "quoted reference value")
        .output("measured_mhz", ctx.config.number(LAMB_SHIFT_MEASURED_MHZ), "quoted experimental value");
    Ok(r)
}

fn phi4(ctx: &Context, sigma: f64, lambda: f64) -> Result<ReportRecord> {
    let potential = SsbPotential::new(ctx.config.units.to_gev(sigma, 2), lambda)?;
    let vacuum = potential.vacuum();
    let lambda_r = lambda_renormalized(lambda)?;
    let invariant = lambda_invariant_ratio(vacuum.m_sigma, vacuum.phi1)?;
    let h = HIGGS_REFERENCE;
    let mut r = ctx.base_report("phi4");
    r.input("sigma", echo(sigma)).input("lambda", echo(lambda));
    r.output("phi1", ctx.show_mass(vacuum.phi1), "broken vacuum (6σ/λ)^½")
        .output("m_sigma", ctx.show_mass(vacuum.m_sigma), "excitation mass (2σ)^½")
        .output("lambda_R", ctx.config.number(lambda_r), "one-loop λ(1 + 9λ/(32π²))")
        .output("invariant_ratio", ctx.config.number(invariant), "3(m_σ/Φ₁)², equal to λ at any loop order")
        .output("higgs_lower_bound", ctx.show_mass(h.lower_bound), "reference value, not derived")
        .output("higgs_predicted", ctx.show_mass(h.predicted), "reference value, not derived")
        .output("higgs_upper_bound", ctx.show_mass(h.upper_bound), "reference value, not derived");
    Ok(r)
}

fn phase_name(p: VacuumPhase) -> &'static str {
    match p {
        VacuumPhase::Broken => "broken",
        VacuumPhase::SymmetryRestored => "symmetry-restored",
    }
}

fn resum(
    ctx: &Context,
    lambda0: f64,
    mu0: f64,
    b: Option<f64>,
    mu: Option<f64>,
    range: Option<(f64, f64)>,
    points: usize,
) -> Result<ReportRecord> {
    let b = ctx.param(b, "b", DEFAULT_BETA_COEFF)?;
    let state = ResummationState::new(lambda0, ctx.mass(mu0), b)?;
    let mut r = ctx.base_report("resum");
    r.input("lambda0", echo(lambda0)).input("mu0", echo(mu0)).input("b", echo(b));
    r.output("critical_scale", ctx.show_mass(state.critical_scale()), "pole μ₀ exp(1/(2bλ₀)) of the resummed chain");
    match (mu, range) {
        (Some(mu), _) => {
            r.input("mu", echo(mu));
            let mu_gev = ctx.mass(mu);
            let coupling = match state.resum_chain(mu_gev)? {
                ResummedCoupling::Finite(v) => v,
                ResummedCoupling::Pole => return Err(Error::Pole { mu: mu_gev }),
            };
            r.output("coupling", ctx.config.number(coupling), "λ₀/(1 − bλ₀ ln(μ²/μ₀²))")
                .output("first_order", ctx.config.number(state.first_order(mu_gev)?), "λ₀(1 + bλ₀ ln(μ²/μ₀²))")
                .output("chain_ratio", ctx.config.number(state.chain_ratio(mu_gev)?), "derived")
                .output("phase", phase_name(state.phase(mu_gev)?), "derived from μ vs μ_c");
        }
        (None, Some((lo, hi))) => {
            if !(lo > 0.0 && hi > lo) || points < 2 {
                return Err(Error::InvalidInput("sweep needs 0 < mu-min < mu-max and at least 2 points".into()));
            }
            r.input("mu-min", echo(lo)).input("mu-max", echo(hi)).input("points", points);
            let mut rows = Vec::with_capacity(points);
            for i in 0..points {
                let t = i as f64 / (points - 1) as f64;
                let mu = lo * (hi / lo).powf(t);
                let mu_gev = ctx.mass(mu);
                let coupling = match state.resum_chain(mu_gev)? {
                    ResummedCoupling::Finite(v) => ctx.config.number(v),
                    ResummedCoupling::Pole => "pole".to_string(),
                };
                rows.push(vec![
                    ctx.config.number(mu),
                    coupling,
                    ctx.config.number(state.first_order(mu_gev)?),
                    phase_name(state.phase(mu_gev)?).to_string(),
                ]);
            }
            r.output("points", points.to_string(), "derived");
            r.table = Some(Table {
                header: vec!["mu".into(), "coupling".into(), "first_order".into(), "phase".into()],
                rows,
                plot_columns: (0, 1),
            });
        }
        (None, None) => {
            return Err(Error::InvalidInput("resum needs --mu or --mu-min/--mu-max".into()));
        }
    }
    Ok(r)
}

fn oracle(ctx: &Context, n: u32, msq: f64, cutoffs: Vec<f64>, rel_tol: Option<f64>) -> Result<ReportRecord> {
    let rel_tol = ctx.param(rel_tol, "rel-tol", CutoffProbe::DEFAULT_REL_TOL)?;
    let units = ctx.config.units;
    let gev_cutoffs: Vec<f64> = cutoffs.iter().map(|&c| units.to_gev(c, 1)).collect();
    let probe = CutoffProbe::with_rel_tol(n, units.to_gev(msq, 2), gev_cutoffs, rel_tol)?;
    let mut r = ctx.base_report("oracle");
    r.input("n", n)
        .input("msq", echo(msq))
        .input("cutoffs", cutoffs.iter().map(|&c| echo(c)).collect::<Vec<_>>().join(","))
        .input("rel-tol", echo(rel_tol));
    let dim = 4 - 2 * n as i32;
    let samples = probe.sweep()?;
    let rows = samples
        .iter()
        .zip(&cutoffs)
        .map(|(s, &c)| {
            vec![
                ctx.config.number(c),
                ctx.config.number(units.from_gev(s.radial, dim)),
                ctx.config.number(units.from_gev(s.loop_value(n), dim)),
            ]
        })
        .collect();
    let last = samples.last().expect("probe has at least one cutoff");
    r.output("radial_at_max_cutoff", ctx.config.number(units.from_gev(last.radial, dim)), "Euclidean radial quadrature")
        .output(
            "loop_value_at_max_cutoff",
            ctx.config.number(units.from_gev(last.loop_value(n), dim)),
            "Wick-rotated value, units of i/(16π²)",
        );
    match divergence_signature(&probe) {
        Ok(sig) => {
            r.output("classification", sig.class.as_str(), "Λ-growth of the radial integral")
                .output("growth_exponent", ctx.config.number(sig.exponent), "derived")
                .output("growth_coefficient", ctx.config.number(sig.coefficient), "derived");
        }
        Err(Error::InvalidInput(_)) => {}
        Err(e) => return Err(e),
    }
    if n == 2 {
        match asymptote_constant(&probe) {
            Ok(a) => {
                r.output("asymptote_constant", ctx.config.number(a), "lim R(Λ) − ln Λ, GeV units");
            }
            Err(Error::InvalidInput(_)) => {}
            Err(e) => return Err(e),
        }
    }
    if let Ok(closed) = ScalarLoopIntegral::with_mass_sq(n, probe.mass_sq()).and_then(|i| i.numeric_value()) {
        r.output("closed_form", ctx.config.number(units.from_gev(closed, dim)), "kernel closed form, units of i/(16π²)");
    }
    r.table = Some(Table {
        header: vec!["cutoff".into(), "radial".into(), "loop_value".into()],
        rows,
        plot_columns: (0, 1),
    });
    Ok(r)
}

fn demo(ctx: &Context) -> (ReportRecord, i32) {
    let mut r = ctx.base_report("demo");
    let outcomes = walkthrough();
    let mut all = true;
    for c in &outcomes {
        all &= c.passed;
        let verdict = if c.passed { "pass" } else { "fail" };
        r.output(c.name, format!("{verdict}: {}", c.detail), "cross-check");
    }
    r.output("all_passed", all.to_string(), "derived");
    // the electron C₁ as fixed by the walkthrough
    let fixed = ScalarLoopIntegral::new(2).ok().and_then(|i| {
        let mu1 = ctx.config.units.from_gev(solve_mu1(ELECTRON_MASS_GEV).ok()?, 1);
        i.regularize().with_scale(1, mu1).ok()
    });
    if let Some(v) = fixed {
        r.set_ledger(v.constants(), &ctx.config);
    }
    (r, if all { EXIT_OK } else { EXIT_NUMERIC })
}
