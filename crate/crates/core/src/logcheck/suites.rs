use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use serde_json::json;

use super::exact::{check_identity_exact, check_log_convex_exact, check_nth_root_increasing_exact};
use super::numeric::{scan_log_curvature, Curvature, RealGrid};
use super::report::PropertyReport;
use super::CheckError;
use crate::exact::{format_rational, window, ExactError, Sequence, SequenceWindow};
use crate::real::{Function, PrecisionContext};

fn require_len(subject: &str, n: usize) -> Result<(), CheckError> {
    if n < 3 {
        return Err(CheckError::WindowTooShort {
            subject: subject.to_string(),
            need: 3,
            got: n,
        });
    }
    Ok(())
}

/// Window over indices `start..=end`.
fn span(seq: Sequence, start: usize, end: usize, mu: Option<&BigRational>) -> Result<SequenceWindow, CheckError> {
    Ok(window(seq, start, end + 1 - start, mu)?)
}

/// Root pairs `(n, n+1)` for `n = start..=end`.
fn root_pairs(seq: Sequence, start: usize, end: usize, mu: Option<&BigRational>) -> Result<PropertyReport, CheckError> {
    check_nth_root_increasing_exact(&span(seq, start, end + 1, mu)?)
}

/// Smallest `n0` such that every pair `(n, n+1)` with `n ≥ n0` in the report
/// held.
fn first_monotone_index(report: &PropertyReport, start: usize) -> usize {
    report
        .counterexamples
        .iter()
        .filter_map(|c| c.at.parse::<usize>().ok())
        .max()
        .map_or(start, |n| n + 1)
}

/// `4e(μ+2)²`, beyond which `a_n(μ)^{1/n}` is known to increase.
pub fn root_threshold(mu: f64) -> f64 {
    4.0 * std::f64::consts::E * (mu + 2.0).powi(2)
}

/// Thresholds quoted for the two integer-order cases: `n > 45` for `μ = 0`
/// and `n > 101` for `μ = 1`.
pub fn stated_root_threshold(mu: &BigRational) -> Option<usize> {
    if *mu == BigRational::from_integer(0.into()) {
        Some(45)
    } else if mu.is_one() {
        Some(101)
    } else {
        None
    }
}

/// Log-convexity of `|B_{2n}|/(2n)!` and `|B_{2n}|` and root monotonicity of
/// `|B_{2n}|` over `n = 1..=n_max`.
pub fn verify_bernoulli_suite(n_max: usize) -> Result<Vec<PropertyReport>, CheckError> {
    require_len("bernoulli", n_max)?;
    let (over_factorial, abs) = rayon::join(
        || span(Sequence::BernoulliAbsEvenOverFactorial, 1, n_max, None),
        || span(Sequence::BernoulliAbsEven, 1, n_max, None),
    );
    let abs = abs?;
    Ok(vec![
        check_log_convex_exact(&over_factorial?)?,
        check_log_convex_exact(&abs)?,
        check_nth_root_increasing_exact(&abs)?,
    ])
}

/// Exact checks on `a_n(μ)`: log-convexity over `1..=n_max`, root pairs over
/// `n = 2..=n_max`, and a non-gating diagnostic of the root pairs from `n = 1`
/// recording where monotonicity starts. For `μ = 1` the values are also
/// compared with `lasalle_a`.
pub fn verify_a_mu_suite(mu: &BigRational, n_max: usize) -> Result<Vec<PropertyReport>, CheckError> {
    if *mu <= -BigRational::one() {
        return Err(ExactError::MuOutOfDomain(mu.clone()).into());
    }
    require_len("a_mu", n_max)?;
    let values = span(Sequence::AMu, 1, n_max + 1, Some(mu))?;
    let convex = SequenceWindow {
        values: values.values[..n_max].to_vec(),
        ..values.clone()
    };
    let tail = SequenceWindow {
        start: 2,
        values: values.values[1..].to_vec(),
        ..values.clone()
    };
    let mut reports = vec![
        check_log_convex_exact(&convex)?,
        check_nth_root_increasing_exact(&tail)?,
    ];

    let all = check_nth_root_increasing_exact(&values)?;
    let first = first_monotone_index(&all, 1);
    let mu_f = mu.to_f64().unwrap_or(f64::NAN);
    let threshold = root_threshold(mu_f);
    let stated = stated_root_threshold(mu);
    let mut diagnostic = all
        .non_gating()
        .allow_exceptions()
        .note("first_monotone_index", first)
        .note("threshold_4e_mu_plus_2_squared", threshold)
        .note("threshold_ceil", threshold.ceil());
    if let Some(s) = stated {
        diagnostic = diagnostic
            .note("stated_threshold", s)
            .note("first_index_within_stated", first <= s + 1);
    }
    reports.push(diagnostic);

    if mu.is_one() {
        let lasalle = span(Sequence::LasalleA, 1, n_max, None)?;
        reports.push(check_identity_exact(&convex, &lasalle)?.note("mu", format_rational(mu)));
    }
    Ok(reports)
}

/// Log-convexity and root monotonicity (from `n = 2`) of `b_n = a_n(0)/2`.
pub fn verify_b_suite(n_max: usize) -> Result<Vec<PropertyReport>, CheckError> {
    require_len("b", n_max)?;
    Ok(vec![
        check_log_convex_exact(&span(Sequence::B, 1, n_max, None)?)?,
        root_pairs(Sequence::B, 2, n_max, None)?,
    ])
}

/// Exact root monotonicity and log-convexity of the Bell numbers over
/// `1..=n_max`, and a numerical check that `(ln B)'' > 0` on `x = 1..20`.
pub fn verify_bell_suite(n_max: usize, ctx: &PrecisionContext) -> Result<Vec<PropertyReport>, CheckError> {
    require_len("bell", n_max)?;
    let bell = span(Sequence::Bell, 1, n_max, None)?;
    let grid = RealGrid::new(1.0, 20.0, 1.0)?;
    let lemma = scan_log_curvature(&Function::Bell, &grid, 1e-3, Curvature::Convex, ctx)?;
    Ok(vec![
        check_nth_root_increasing_exact(&bell)?,
        check_log_convex_exact(&bell)?,
        lemma.note("samples_summary", json!({ "points": grid.len() })),
    ])
}
