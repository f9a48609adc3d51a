use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use super::report::{Counterexample, Method, Outcome, Property, PropertyReport, Range};
use super::CheckError;
use crate::real::mp::{log2_abs, Mp};
use crate::real::{
    bessel_zero, first_zero_upper_bound, gamma_lower_bound_holds, ln_bell_real, log_second_difference_scaled,
    stirling_lower_bound_as_printed_holds, Function, PrecisionContext, Real, RealFunction,
};

/// Upper limit on the number of points in a [`RealGrid`].
pub const MAX_GRID_POINTS: usize = 1_000_000;

/// Evenly spaced points `lo, lo + step, ...` up to and including `hi` when it
/// falls on the lattice.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RealGrid {
    lo: f64,
    hi: f64,
    step: f64,
}

impl RealGrid {
    pub fn new(lo: f64, hi: f64, step: f64) -> Result<Self, CheckError> {
        if !(lo.is_finite() && hi.is_finite() && lo < hi) {
            return Err(CheckError::BadGrid(format!("need lo < hi, got lo = {lo}, hi = {hi}")));
        }
        if !(step > 0.0 && step.is_finite()) {
            return Err(CheckError::BadGrid(format!("step must be positive, got {step}")));
        }
        let grid = RealGrid { lo, hi, step };
        if (hi - lo) / step >= MAX_GRID_POINTS as f64 {
            return Err(CheckError::BadGrid(format!("more than {MAX_GRID_POINTS} points")));
        }
        Ok(grid)
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn step(&self) -> f64 {
        self.step
    }

    pub fn len(&self) -> usize {
        ((self.hi - self.lo) / self.step + 1e-9).floor() as usize + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn points(&self) -> Vec<f64> {
        (0..self.len()).map(|i| self.lo + i as f64 * self.step).collect()
    }

    pub fn range(&self) -> Range {
        Range::Grid {
            lo: self.lo,
            hi: self.hi,
            step: self.step,
            points: self.len(),
        }
    }
}

const WITNESS_DIGITS: usize = 25;

fn witness(v: &Real) -> String {
    v.to_string_digits(WITNESS_DIGITS)
}

/// Evaluates `f` on every grid point, in parallel, keeping grid order.
fn values(f: &dyn RealFunction, points: &[f64], ctx: &PrecisionContext) -> Result<Vec<Real>, CheckError> {
    let out: Result<Vec<Real>, _> = points.par_iter().map(|&x| f.eval(&Real::from(x), ctx)).collect();
    Ok(out?)
}

/// `f(x_i) < f(x_{i+1})` for consecutive grid points. Pairs whose difference
/// is within ten times the tolerance (relative to `|f(x_i)|`) are counted as
/// inconclusive rather than decided.
pub fn scan_monotone(
    f: &dyn RealFunction,
    grid: &RealGrid,
    ctx: &PrecisionContext,
) -> Result<PropertyReport, CheckError> {
    let points = grid.points();
    let vals = values(f, &points, ctx)?;
    let band = (10.0 * ctx.tolerance()).log2();
    let m = Mp::new(ctx.mp().p + 16);
    let mut report = PropertyReport::new(
        Property::MonotoneIncreasing,
        f.name(),
        grid.range(),
        Method::CertifiedFloat,
    )
    .note("tolerance", ctx.tolerance())
    .note("precision_bits", ctx.working_precision());
    for i in 0..vals.len().saturating_sub(1) {
        let d = m.sub(&vals[i + 1].0, &vals[i].0);
        let outcome = if d.is_zero() || log2_abs(&d) < band + vals[i].log2_abs() {
            Outcome::Inconclusive
        } else if d.is_negative() {
            Outcome::Fail(Counterexample::new(
                points[i],
                [
                    ("x_next", points[i + 1].to_string()),
                    ("f(x)", witness(&vals[i])),
                    ("f(x_next)", witness(&vals[i + 1])),
                ],
            ))
        } else {
            Outcome::Strict
        };
        report.push(outcome);
    }
    Ok(report)
}

/// Sign of `(ln f)''` that a scan expects.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Curvature {
    /// `(ln f)'' > 0`.
    Convex,
    /// `(ln f)'' < 0`.
    Concave,
}

/// Samples the central second difference of `ln f` with step `h` on the
/// grid and compares its sign with `expect`. Values within ten times the
/// tolerance, scaled by the error amplification of the difference, are
/// inconclusive. Every sample is recorded under the `samples` note.
pub fn scan_log_curvature(
    f: &dyn RealFunction,
    grid: &RealGrid,
    h: f64,
    expect: Curvature,
    ctx: &PrecisionContext,
) -> Result<PropertyReport, CheckError> {
    if !(h > 0.0 && h.is_finite()) {
        return Err(CheckError::BadGrid(format!(
            "difference step must be positive, got {h}"
        )));
    }
    let points = grid.points();
    let diffs: Result<Vec<(Real, f64)>, _> = points
        .par_iter()
        .map(|&x| log_second_difference_scaled(f, x, h, ctx))
        .collect();
    let diffs = diffs?;
    let property = match expect {
        Curvature::Convex => Property::LogConvex,
        Curvature::Concave => Property::LogConcave,
    };
    let mut report = PropertyReport::new(property, f.name(), grid.range(), Method::CertifiedFloat)
        .note("h", h)
        .note("tolerance", ctx.tolerance());
    let mut samples = Vec::with_capacity(points.len());
    for (&x, (d, scale)) in points.iter().zip(&diffs) {
        let noise = (10.0 * ctx.tolerance() * scale).log2();
        let sign = if d.is_zero() {
            0
        } else if d.is_negative() {
            -1
        } else {
            1
        };
        samples.push(json!({ "x": x, "second_difference": d.to_string_digits(12), "sign": sign }));
        let right_sign = match expect {
            Curvature::Convex => sign > 0,
            Curvature::Concave => sign < 0,
        };
        let outcome = if sign == 0 || d.log2_abs() < noise {
            Outcome::Inconclusive
        } else if right_sign {
            Outcome::Strict
        } else {
            Outcome::Fail(Counterexample::new(x, [("second_difference", witness(d))]))
        };
        report.push(outcome);
    }
    Ok(report.note("samples", Value::Array(samples)))
}

/// Evidence for log-concavity of `θ` and of `B(x)^{1/x}`. Both reports are
/// non-gating and carry every sampled second difference.
pub fn scan_conjectures(
    grid_theta: &RealGrid,
    grid_bell: &RealGrid,
    h: f64,
    ctx: &PrecisionContext,
) -> Result<Vec<PropertyReport>, CheckError> {
    let theta = scan_log_curvature(&Function::Theta, grid_theta, h, Curvature::Concave, ctx)?;
    let bell = scan_log_curvature(&Function::BellRoot, grid_bell, h, Curvature::Concave, ctx)?;
    Ok(vec![
        theta.non_gating().allow_exceptions(),
        bell.non_gating().allow_exceptions(),
    ])
}

/// `B(x)^{1/x} < B(y)^{1/y}`, compared as `ln B(x) / x < ln B(y) / y`.
pub fn holder_compare(x: f64, y: f64, ctx: &PrecisionContext) -> Result<bool, CheckError> {
    if !(x > 0.0 && x < y && y.is_finite()) {
        return Err(CheckError::Domain(format!(
            "holder_compare requires 0 < x < y, got x = {x}, y = {y}"
        )));
    }
    let (lx, ly) = rayon::join(|| ln_bell_real(x, ctx), || ln_bell_real(y, ctx));
    let m = ctx.mp();
    let rx = m.div(&lx?.0, &m.f(x));
    let ry = m.div(&ly?.0, &m.f(y));
    Ok(rx.cmp(&ry).is_some_and(|c| c < 0))
}

/// `count` reproducible pairs `0 < x < y ≤ upper` drawn uniformly from a
/// ChaCha stream seeded with `seed`.
pub fn random_pairs(count: usize, upper: f64, seed: u64) -> Vec<(f64, f64)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let a: f64 = upper * (1.0 - rng.gen::<f64>());
        let b: f64 = upper * (1.0 - rng.gen::<f64>());
        if a != b {
            out.push((a.min(b), a.max(b)));
        }
    }
    out
}

/// [`holder_compare`] over a list of pairs.
pub fn verify_holder(pairs: &[(f64, f64)], ctx: &PrecisionContext) -> Result<PropertyReport, CheckError> {
    let results: Result<Vec<bool>, _> = pairs.par_iter().map(|&(x, y)| holder_compare(x, y, ctx)).collect();
    let range = Range::Points {
        values: pairs.iter().map(|(x, y)| format!("({x}, {y})")).collect(),
    };
    let mut report = PropertyReport::new(Property::MonotoneIncreasing, "bell_root", range, Method::CertifiedFloat)
        .note("comparison", "ln B(x)/x < ln B(y)/y for each pair x < y");
    for (&(x, y), ok) in pairs.iter().zip(results?) {
        report.push(if ok {
            Outcome::Strict
        } else {
            Outcome::Fail(Counterexample::new(format!("({x}, {y})"), []))
        });
    }
    Ok(report)
}

/// `j_{μ,1} < sqrt(μ+1)(sqrt(μ+2)+1)` and `j_{μ,1} < 2(μ+2)` for every `μ`.
pub fn check_first_zero_bound(mu_grid: &[f64], ctx: &PrecisionContext) -> Result<PropertyReport, CheckError> {
    let zeros: Result<Vec<Real>, _> = mu_grid.par_iter().map(|&mu| bessel_zero(mu, 1, ctx)).collect();
    let range = Range::Points {
        values: mu_grid.iter().map(f64::to_string).collect(),
    };
    let mut report = PropertyReport::new(Property::BoundHolds, "j_{mu,1}", range, Method::CertifiedFloat)
        .note("bounds", "sqrt(mu+1)*(sqrt(mu+2)+1) and 2*(mu+2)");
    let m = ctx.mp();
    let mut table = BTreeMap::new();
    for (&mu, j) in mu_grid.iter().zip(zeros?) {
        let mu_f = m.f(mu);
        let chambers = m.mul(
            &m.sqrt(&m.add(&mu_f, &m.u(1))),
            &m.add(&m.sqrt(&m.add(&mu_f, &m.u(2))), &m.u(1)),
        );
        let linear = m.mul(&m.u(2), &m.add(&mu_f, &m.u(2)));
        let below = |b: &astro_float::BigFloat| j.0.cmp(b).is_some_and(|c| c < 0);
        let (ok1, ok2) = (below(&chambers), below(&linear));
        table.insert(
            mu.to_string(),
            json!({ "j1": witness(&j), "bound_sqrt": first_zero_upper_bound(mu), "bound_linear": 2.0 * (mu + 2.0) }),
        );
        for ok in [ok1, ok2] {
            report.push(if ok {
                Outcome::Strict
            } else {
                Outcome::Fail(Counterexample::new(
                    mu,
                    [
                        ("j1", witness(&j)),
                        ("bound", if ok1 { "linear" } else { "sqrt" }.into()),
                    ],
                ))
            });
        }
    }
    Ok(report.note("values", Value::Object(table.into_iter().collect())))
}

/// The Stirling lower bound `Γ(x) > sqrt(2π/x) (x/e)^x` at each point, plus a
/// non-gating report for the variant with `sqrt(2πx)`, which only holds for
/// small `x`.
pub fn check_gamma_bound(points: &[f64], ctx: &PrecisionContext) -> Result<Vec<PropertyReport>, CheckError> {
    let range = Range::Points {
        values: points.iter().map(f64::to_string).collect(),
    };
    let mut reports = Vec::new();
    type BoundCheck = fn(f64, &PrecisionContext) -> Result<bool, crate::real::EvalError>;
    let forms: [(&str, BoundCheck, bool); 2] = [
        ("sqrt(2*pi/x)*(x/e)^x", |x, c| gamma_lower_bound_holds(x, c), true),
        (
            "sqrt(2*pi*x)*(x/e)^x",
            |x, c| stirling_lower_bound_as_printed_holds(x, c),
            false,
        ),
    ];
    for (form, check, gating) in forms {
        let results: Result<Vec<bool>, _> = points.par_iter().map(|&x| check(x, ctx)).collect();
        let mut report = PropertyReport::new(
            Property::BoundHolds,
            "gamma_lower_bound",
            range.clone(),
            Method::CertifiedFloat,
        )
        .note("bound", form);
        for (&x, ok) in points.iter().zip(results?) {
            report.push(if ok {
                Outcome::Strict
            } else {
                Outcome::Fail(Counterexample::new(x, [("bound", form.to_string())]))
            });
        }
        if !gating {
            report = report.non_gating().allow_exceptions();
        }
        reports.push(report);
    }
    Ok(reports)
}
