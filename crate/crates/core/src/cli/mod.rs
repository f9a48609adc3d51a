//! The `logbehave` command line.
//!
//! Exit codes: 0 success, 1 internal error, 2 usage or domain error,
//! 3 a theorem-backed verification failed.

mod render;

use std::ffi::OsString;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde_json::{json, Value};
use thiserror::Error;

use crate::exact::{format_rational, narayana_poly, parse_rational, ExactError, Sequence};
use crate::logcheck::{
    check_first_zero_bound, check_gamma_bound, random_pairs, scan_conjectures, scan_monotone, verify_a_mu_suite,
    verify_b_suite, verify_bell_suite, verify_bernoulli_suite, verify_holder, CheckError, PropertyReport, RealGrid,
};
use crate::real::{
    bell_real, bessel_j, bessel_zero, bessel_zeta_real, ln_gamma, riemann_zeta_real, theta, theta_mu, EvalError,
    Function, PrecisionContext, Real, RealFunction,
};

use render::{Output, Table};

pub const SCHEMA: &str = "logbehave/1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Parser)]
#[command(
    name = "logbehave",
    version,
    about = "Log-behavior of zeta-related sequences and functions"
)]
struct Cli {
    /// Working precision in bits.
    #[arg(long, global = true, default_value_t = 256)]
    precision: usize,
    /// Target relative tolerance of real evaluations.
    #[arg(long, global = true, default_value_t = 1e-30)]
    tolerance: f64,
    /// Output format. Defaults to csv for plotdata and text otherwise.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Cap on series lengths.
    #[arg(long, global = true, default_value_t = 100_000)]
    max_terms: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Exact values of a sequence for indices start..=end.
    Gen {
        sequence: String,
        start: usize,
        end: usize,
        /// Order μ for a_mu and rayleigh_sigma, as p/q or a decimal.
        #[arg(long, allow_hyphen_values = true)]
        mu: Option<String>,
    },
    /// Evaluate a real function at one point.
    Eval {
        function: String,
        #[arg(allow_negative_numbers = true)]
        x: Option<f64>,
        #[arg(long, allow_hyphen_values = true)]
        mu: Option<String>,
        /// Zero index for bessel_zero.
        #[arg(long)]
        k: Option<usize>,
    },
    /// Run a verification suite.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        /// Order μ; for zero_bounds a comma-separated list.
        #[arg(long, allow_hyphen_values = true)]
        mu: Option<String>,
        #[arg(long)]
        max_n: Option<usize>,
        /// Grid as LO HI STEP for the scanning suites.
        #[arg(value_names = ["LO", "HI", "STEP"], allow_negative_numbers = true)]
        grid: Vec<f64>,
        /// Number of random pairs for holder.
        #[arg(long, default_value_t = 100)]
        pairs: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Upper end of the random pairs for holder.
        #[arg(long, default_value_t = 50.0)]
        max_y: f64,
        /// Step of the second differences for conjectures.
        #[arg(long)]
        h: Option<f64>,
    },
    /// Two-column (x, f(x)) data over a grid.
    Plotdata {
        function: String,
        #[arg(allow_negative_numbers = true)]
        lo: f64,
        #[arg(allow_negative_numbers = true)]
        hi: f64,
        step: f64,
        #[arg(long, allow_hyphen_values = true)]
        mu: Option<String>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Suite {
    Bernoulli,
    #[value(name = "a_mu")]
    AMu,
    B,
    Bell,
    #[value(name = "theta_monotone")]
    ThetaMonotone,
    #[value(name = "theta_mu_monotone")]
    ThetaMuMonotone,
    #[value(name = "bell_root_monotone")]
    BellRootMonotone,
    Conjectures,
    #[value(name = "zero_bounds")]
    ZeroBounds,
    #[value(name = "gamma_bound")]
    GammaBound,
    Holder,
}

impl Suite {
    fn name(self) -> String {
        self.to_possible_value()
            .map(|v| v.get_name().to_string())
            .unwrap_or_default()
    }
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error(transparent)]
    Eval(#[from] EvalError),
    #[error(transparent)]
    Check(#[from] CheckError),
    #[error("cannot write output: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        let eval = |e: &EvalError| match e {
            EvalError::Domain { .. } | EvalError::InvalidContext(_) => 2,
            _ => 1,
        };
        match self {
            CliError::Usage(_) | CliError::Exact(_) => 2,
            CliError::Eval(e) => eval(e),
            CliError::Check(CheckError::Eval(e)) => eval(e),
            CliError::Check(_) => 2,
            CliError::Io(_) => 1,
        }
    }
}

/// Parses `args` (including the program name), runs the command and maps
/// the outcome to an exit code.
pub fn main_with_args<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(e.exit_code().clamp(0, 255) as u8);
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("logbehave: error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(cli: &Cli) -> Result<u8, CliError> {
    let ctx = PrecisionContext::new(cli.precision, cli.tolerance, cli.max_terms)?;
    let (output, code) = match &cli.command {
        Command::Gen {
            sequence,
            start,
            end,
            mu,
        } => (cmd_gen(sequence, *start, *end, mu.as_deref())?, 0),
        Command::Eval { function, x, mu, k } => (cmd_eval(function, *x, mu.as_deref(), *k, &ctx)?, 0),
        Command::Verify {
            suite,
            mu,
            max_n,
            grid,
            pairs,
            seed,
            max_y,
            h,
        } => {
            let opts = VerifyOptions {
                mu: mu.as_deref(),
                max_n: *max_n,
                grid,
                pairs: *pairs,
                seed: *seed,
                max_y: *max_y,
                h: *h,
            };
            cmd_verify(*suite, &opts, &ctx)?
        }
        Command::Plotdata {
            function,
            lo,
            hi,
            step,
            mu,
        } => (cmd_plotdata(function, *lo, *hi, *step, mu.as_deref(), &ctx)?, 0),
    };
    let default = match cli.command {
        Command::Plotdata { .. } => Format::Csv,
        _ => Format::Text,
    };
    let text = output.render(cli.format.unwrap_or(default));
    match &cli.out {
        Some(path) => std::fs::write(path, text)?,
        None => {
            use std::io::Write;
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            stdout.flush()?;
        }
    }
    Ok(code)
}

fn envelope(command: &str) -> serde_json::Map<String, Value> {
    let mut m = serde_json::Map::new();
    m.insert("schema".into(), SCHEMA.into());
    m.insert("command".into(), command.into());
    m
}

fn context_json(ctx: &PrecisionContext) -> Value {
    json!({ "precision_bits": ctx.working_precision(), "tolerance": ctx.tolerance() })
}

fn parse_mu_real(s: &str) -> Result<f64, CliError> {
    if let Ok(v) = s.trim().parse::<f64>() {
        if v.is_finite() {
            return Ok(v);
        }
    }
    parse_rational(s)?
        .to_f64()
        .ok_or_else(|| CliError::Usage(format!("mu = {s} is out of range")))
}

/// Significant digits worth printing at the context tolerance.
fn digits(ctx: &PrecisionContext) -> usize {
    let from_tol = (-ctx.tolerance().log10()).ceil().max(1.0) as usize;
    from_tol.min((ctx.working_precision() as f64 * std::f64::consts::LOG10_2) as usize)
}

fn grid(values: &[f64]) -> Result<RealGrid, CliError> {
    match values {
        [lo, hi, step] => Ok(RealGrid::new(*lo, *hi, *step)?),
        _ => Err(CliError::Usage(format!(
            "a grid needs LO HI STEP, got {} values",
            values.len()
        ))),
    }
}

fn cmd_gen(sequence: &str, start: usize, end: usize, mu: Option<&str>) -> Result<Output, CliError> {
    if start > end {
        return Err(CliError::Usage(format!("start {start} is after end {end}")));
    }
    let mut json = envelope("gen");
    json.insert("sequence".into(), sequence.into());
    json.insert("start".into(), start.into());
    json.insert("end".into(), end.into());
    if sequence == "narayana" {
        if mu.is_some() {
            return Err(CliError::Usage("narayana takes no --mu".into()));
        }
        if start == 0 {
            return Err(ExactError::IndexOutOfDomain {
                sequence: "narayana",
                index: 0,
            }
            .into());
        }
        let polys: Vec<_> = (start..=end).into_par_iter().map(narayana_poly).collect();
        let mut table = Table::new(&["r", "k", "coefficient"]);
        let mut rows = Vec::new();
        for p in &polys {
            let coeffs: Vec<String> = p.coefficients.iter().map(format_rational).collect();
            for (k, c) in coeffs.iter().enumerate() {
                table.push(vec![p.r.to_string(), (k + 1).to_string(), c.clone()]);
            }
            rows.push(json!({ "r": p.r, "coefficients": coeffs }));
        }
        json.insert("rows".into(), rows.into());
        return Ok(Output::new(table, json));
    }
    let seq: Sequence = sequence.parse()?;
    let mu = match (mu, seq.needs_mu()) {
        (Some(m), true) => Some(parse_rational(m)?),
        (None, true) => return Err(ExactError::MissingMu(seq.name()).into()),
        (Some(_), false) => return Err(CliError::Usage(format!("{seq} takes no --mu"))),
        (None, false) => None,
    };
    let values: Vec<BigRational> = (start..=end)
        .into_par_iter()
        .map(|n| seq.value(n, mu.as_ref()))
        .collect::<Result<_, _>>()?;
    let mut table = Table::new(&["index", "value"]);
    let mut rows = Vec::new();
    for (n, v) in (start..=end).zip(&values) {
        let s = format_rational(v);
        table.push(vec![n.to_string(), s.clone()]);
        rows.push(json!({ "index": n, "value": s }));
    }
    if let Some(m) = &mu {
        json.insert("mu".into(), format_rational(m).into());
    }
    json.insert("generator".into(), seq.generator_tag().into());
    json.insert("rows".into(), rows.into());
    Ok(Output::new(table, json))
}

fn cmd_eval(
    function: &str,
    x: Option<f64>,
    mu: Option<&str>,
    k: Option<usize>,
    ctx: &PrecisionContext,
) -> Result<Output, CliError> {
    let mu = mu.map(parse_mu_real).transpose()?;
    let need_mu = || mu.ok_or_else(|| CliError::Usage(format!("{function} requires --mu")));
    let need_x = || x.ok_or_else(|| CliError::Usage(format!("{function} requires an argument x")));
    let (value, error_kind): (Real, &str) = match function {
        "zeta" => (riemann_zeta_real(need_x()?, ctx)?, "relative"),
        "theta" => (theta(need_x()?, ctx)?, "relative"),
        "theta_mu" => (theta_mu(need_mu()?, need_x()?, ctx)?, "relative"),
        "bessel_j" => (bessel_j(need_mu()?, need_x()?, ctx)?, "absolute"),
        "bessel_zero" => {
            let k = k.ok_or_else(|| CliError::Usage("bessel_zero requires --k".into()))?;
            if k == 0 {
                return Err(CliError::Usage("zeros are numbered from k = 1".into()));
            }
            (bessel_zero(need_mu()?, k, ctx)?, "absolute")
        }
        "bessel_zeta" => (bessel_zeta_real(need_mu()?, need_x()?, ctx)?, "relative"),
        "bell_real" => (bell_real(need_x()?, ctx)?, "relative"),
        "ln_gamma" => (ln_gamma(need_x()?, ctx)?, "relative_or_absolute_below_one"),
        _ => {
            return Err(CliError::Usage(format!(
                "unknown function {function:?}; expected one of zeta, theta, theta_mu, bessel_j, bessel_zero, \
                 bessel_zeta, bell_real, ln_gamma"
            )))
        }
    };
    let rendered = value.to_string_digits(digits(ctx));
    let mut json = envelope("eval");
    json.insert("function".into(), function.into());
    json.insert("x".into(), x.into());
    json.insert("mu".into(), mu.into());
    json.insert("k".into(), k.into());
    json.insert("value".into(), rendered.clone().into());
    json.insert("error".into(), json!({ "kind": error_kind, "bound": ctx.tolerance() }));
    json.insert("context".into(), context_json(ctx));
    let mut table = Table::new(&["function", "x", "mu", "k", "value", "error_kind", "error_bound"]);
    let opt = |v: Option<String>| v.unwrap_or_default();
    table.push(vec![
        function.to_string(),
        opt(x.map(|v| v.to_string())),
        opt(mu.map(|v| v.to_string())),
        opt(k.map(|v| v.to_string())),
        rendered.clone(),
        error_kind.to_string(),
        ctx.tolerance().to_string(),
    ]);
    let text = format!("{rendered}\nerror: {error_kind} <= {:e}\n", ctx.tolerance());
    Ok(Output::new(table, json).with_text(text))
}

struct VerifyOptions<'a> {
    mu: Option<&'a str>,
    max_n: Option<usize>,
    grid: &'a [f64],
    pairs: usize,
    seed: u64,
    max_y: f64,
    h: Option<f64>,
}

const ZERO_BOUND_MUS: [f64; 6] = [-0.5, 0.0, 0.5, 1.0, 2.0, 5.0];
const GAMMA_BOUND_POINTS: [f64; 7] = [0.5, 1.0, 2.0, 5.0, 10.0, 50.0, 170.0];

fn grid_or(values: &[f64], lo: f64, hi: f64, step: f64) -> Result<RealGrid, CliError> {
    if values.is_empty() {
        Ok(RealGrid::new(lo, hi, step)?)
    } else {
        grid(values)
    }
}

fn run_suite(suite: Suite, o: &VerifyOptions, ctx: &PrecisionContext) -> Result<Vec<PropertyReport>, CliError> {
    let no_grid = |name: &str| {
        if o.grid.is_empty() {
            Ok(())
        } else {
            Err(CliError::Usage(format!("suite {name} takes no grid")))
        }
    };
    let reports = match suite {
        Suite::Bernoulli => {
            no_grid("bernoulli")?;
            verify_bernoulli_suite(o.max_n.unwrap_or(100))?
        }
        Suite::AMu => {
            no_grid("a_mu")?;
            let mu = parse_rational(o.mu.unwrap_or("1"))?;
            let default_n = if mu == BigRational::from_integer(1.into()) {
                108
            } else if mu == BigRational::from_integer(0.into()) {
                48
            } else {
                60
            };
            verify_a_mu_suite(&mu, o.max_n.unwrap_or(default_n))?
        }
        Suite::B => {
            no_grid("b")?;
            verify_b_suite(o.max_n.unwrap_or(48))?
        }
        Suite::Bell => {
            no_grid("bell")?;
            verify_bell_suite(o.max_n.unwrap_or(200), ctx)?
        }
        Suite::ThetaMonotone => vec![scan_monotone(
            &Function::Theta,
            &grid_or(o.grid, 6.0, 100.0, 0.5)?,
            ctx,
        )?],
        Suite::ThetaMuMonotone => {
            let mu = parse_mu_real(o.mu.unwrap_or("1"))?;
            let lo = (8.0 * std::f64::consts::E * (mu + 2.0).powi(2)).ceil();
            vec![scan_monotone(
                &Function::ThetaMu(mu),
                &grid_or(o.grid, lo, lo + 155.0, 1.0)?,
                ctx,
            )?]
        }
        Suite::BellRootMonotone => {
            vec![scan_monotone(
                &Function::BellRoot,
                &grid_or(o.grid, 1.0, 30.0, 0.25)?,
                ctx,
            )?]
        }
        Suite::Conjectures => {
            let theta_grid = grid_or(o.grid, 6.0, 60.0, 1.0)?;
            scan_conjectures(&theta_grid, &RealGrid::new(1.0, 30.0, 1.0)?, o.h.unwrap_or(1e-2), ctx)?
        }
        Suite::ZeroBounds => {
            no_grid("zero_bounds")?;
            let mus = match o.mu {
                Some(list) => list.split(',').map(parse_mu_real).collect::<Result<Vec<_>, _>>()?,
                None => ZERO_BOUND_MUS.to_vec(),
            };
            if let Some(bad) = mus.iter().find(|&&m| m <= -1.0) {
                return Err(CliError::Usage(format!("zero bounds need mu > -1, got {bad}")));
            }
            vec![check_first_zero_bound(&mus, ctx)?]
        }
        Suite::GammaBound => {
            let points = if o.grid.is_empty() {
                GAMMA_BOUND_POINTS.to_vec()
            } else {
                grid(o.grid)?.points()
            };
            check_gamma_bound(&points, ctx)?
        }
        Suite::Holder => {
            no_grid("holder")?;
            if !(o.max_y > 0.0 && o.max_y.is_finite()) || o.pairs == 0 {
                return Err(CliError::Usage("holder needs --pairs >= 1 and --max-y > 0".into()));
            }
            let pairs = random_pairs(o.pairs, o.max_y, o.seed);
            vec![verify_holder(&pairs, ctx)?.note("seed", o.seed).note("max_y", o.max_y)]
        }
    };
    Ok(reports)
}

fn cmd_verify(suite: Suite, o: &VerifyOptions, ctx: &PrecisionContext) -> Result<(Output, u8), CliError> {
    let reports = run_suite(suite, o, ctx)?;
    let passed = !reports.iter().any(PropertyReport::is_regression);
    let mut json = envelope("verify");
    json.insert("suite".into(), suite.name().into());
    json.insert("context".into(), context_json(ctx));
    json.insert("passed".into(), passed.into());
    json.insert("reports".into(), serde_json::to_value(&reports).unwrap_or(Value::Null));
    let mut table = Table::new(&[
        "subject",
        "property",
        "range",
        "verdict",
        "checked",
        "strict",
        "equalities",
        "inconclusive",
        "counterexamples",
        "method",
        "gating",
    ]);
    let mut text = String::new();
    for r in &reports {
        table.push(vec![
            r.subject.clone(),
            r.property.to_string(),
            r.range.to_string(),
            r.verdict.to_string(),
            r.checked.to_string(),
            r.strict.to_string(),
            r.equalities.to_string(),
            r.inconclusive.to_string(),
            r.counterexamples.len().to_string(),
            r.method.to_string(),
            r.gating.to_string(),
        ]);
        text.push_str(&r.summary());
        text.push('\n');
        for c in r.counterexamples.iter().take(5) {
            let w: Vec<String> = c.witnesses.iter().map(|(k, v)| format!("{k} = {v}")).collect();
            text.push_str(&format!("  counterexample at {}: {}\n", c.at, w.join(", ")));
        }
        if r.counterexamples.len() > 5 {
            text.push_str(&format!("  ... {} more\n", r.counterexamples.len() - 5));
        }
    }
    text.push_str(if passed { "PASSED\n" } else { "FAILED\n" });
    Ok((Output::new(table, json).with_text(text), if passed { 0 } else { 3 }))
}

fn cmd_plotdata(
    function: &str,
    lo: f64,
    hi: f64,
    step: f64,
    mu: Option<&str>,
    ctx: &PrecisionContext,
) -> Result<Output, CliError> {
    let mu = mu.map(parse_mu_real).transpose()?;
    let f = Function::from_name(function, mu).map_err(CliError::Usage)?;
    let grid = RealGrid::new(lo, hi, step)?;
    let points = grid.points();
    let values: Vec<Real> = points
        .par_iter()
        .map(|&x| f.eval(&Real::from(x), ctx))
        .collect::<Result<_, _>>()?;
    let d = digits(ctx);
    let mut table = Table::new(&["x", "value"]);
    let mut rows = Vec::new();
    for (x, v) in points.iter().zip(&values) {
        let s = v.to_string_digits(d);
        table.push(vec![x.to_string(), s.clone()]);
        rows.push(json!({ "x": x, "value": s }));
    }
    let mut json = envelope("plotdata");
    json.insert("function".into(), f.to_string().into());
    json.insert(
        "range".into(),
        serde_json::to_value(grid.range()).unwrap_or(Value::Null),
    );
    json.insert("context".into(), context_json(ctx));
    json.insert("rows".into(), rows.into());
    Ok(Output::new(table, json))
}
