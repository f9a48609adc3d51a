use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Pow, Signed};
use rayon::prelude::*;

use super::report::{Counterexample, Method, Outcome, Property, PropertyReport, Range};
use super::CheckError;
use crate::exact::{format_rational, SequenceWindow};

fn require_positive(w: &SequenceWindow, min_len: usize) -> Result<(), CheckError> {
    if w.len() < min_len {
        return Err(CheckError::WindowTooShort {
            subject: w.name.clone(),
            need: min_len,
            got: w.len(),
        });
    }
    if let Some((i, _)) = w.values.iter().enumerate().find(|(_, v)| !v.is_positive()) {
        return Err(CheckError::NonPositive {
            subject: w.name.clone(),
            index: w.start + i,
        });
    }
    Ok(())
}

/// `middle² ` against `left · right` for positive rationals, as the integer
/// comparison `p_m² q_l q_r` vs `p_l p_r q_m²`.
fn square_vs_product(left: &BigRational, middle: &BigRational, right: &BigRational) -> Ordering {
    let lhs: BigInt = middle.numer() * middle.numer() * left.denom() * right.denom();
    let rhs: BigInt = left.numer() * right.numer() * middle.denom() * middle.denom();
    lhs.cmp(&rhs)
}

fn triple_report(w: &SequenceWindow, property: Property) -> Result<PropertyReport, CheckError> {
    require_positive(w, 3)?;
    let bad = match property {
        Property::LogConvex => Ordering::Greater,
        _ => Ordering::Less,
    };
    let outcomes: Vec<Outcome> = (1..w.len() - 1)
        .into_par_iter()
        .map(|i| {
            let (l, m, r) = (&w.values[i - 1], &w.values[i], &w.values[i + 1]);
            match square_vs_product(l, m, r) {
                Ordering::Equal => Outcome::Equal,
                o if o == bad => Outcome::Fail(Counterexample::new(
                    w.start + i,
                    [
                        ("a[n-1]", format_rational(l)),
                        ("a[n]", format_rational(m)),
                        ("a[n+1]", format_rational(r)),
                    ],
                )),
                _ => Outcome::Strict,
            }
        })
        .collect();
    let range = Range::Index {
        start: w.start + 1,
        end: w.end() - 1,
    };
    let mut report = PropertyReport::new(property, w.name.clone(), range, Method::ExactBigint)
        .note("generator", w.generator_tag.clone());
    for o in outcomes {
        report.push(o);
    }
    Ok(report)
}

/// `a_n² ≤ a_{n-1} a_{n+1}` at every interior index of the window, by exact
/// cross-multiplication. Equality counts as holding; the report separates
/// strict and equal cases.
pub fn check_log_convex_exact(w: &SequenceWindow) -> Result<PropertyReport, CheckError> {
    triple_report(w, Property::LogConvex)
}

/// `a_n² ≥ a_{n-1} a_{n+1}` at every interior index, exactly.
pub fn check_log_concave_exact(w: &SequenceWindow) -> Result<PropertyReport, CheckError> {
    triple_report(w, Property::LogConcave)
}

/// Decides `a^{1/n} < b^{1/(n+1)}` for positive rationals `a = p/q`,
/// `b = r/s` through `p^{n+1} s^n < r^n q^{n+1}`.
pub fn root_less(a: &BigRational, n: usize, b: &BigRational) -> Ordering {
    let n = n as u32;
    let lhs: BigInt = Pow::pow(a.numer(), n + 1) * Pow::pow(b.denom(), n);
    let rhs: BigInt = Pow::pow(b.numer(), n) * Pow::pow(a.denom(), n + 1);
    lhs.cmp(&rhs)
}

/// `a_n^{1/n} < a_{n+1}^{1/(n+1)}` for every adjacent pair of the window
/// (strict), by exact integer powers. The window must start at index 1 or
/// later.
pub fn check_nth_root_increasing_exact(w: &SequenceWindow) -> Result<PropertyReport, CheckError> {
    require_positive(w, 2)?;
    if w.start == 0 {
        return Err(CheckError::WindowTooShort {
            subject: format!("{} (index 0 has no root)", w.name),
            need: 1,
            got: 0,
        });
    }
    let outcomes: Vec<Outcome> = (0..w.len() - 1)
        .into_par_iter()
        .map(|i| {
            let n = w.start + i;
            let (a, b) = (&w.values[i], &w.values[i + 1]);
            match root_less(a, n, b) {
                Ordering::Less => Outcome::Strict,
                o => {
                    let relation = if o == Ordering::Equal { "equal" } else { "greater" };
                    Outcome::Fail(Counterexample::new(
                        n,
                        [
                            ("a[n]", format_rational(a)),
                            ("a[n+1]", format_rational(b)),
                            ("relation", relation.into()),
                        ],
                    ))
                }
            }
        })
        .collect();
    let range = Range::Index {
        start: w.start,
        end: w.end() - 1,
    };
    let mut report = PropertyReport::new(Property::NthRootIncreasing, w.name.clone(), range, Method::ExactBigint)
        .note("generator", w.generator_tag.clone())
        .note("comparison", "a[n]^(1/n) < a[n+1]^(1/(n+1)) for each n in range");
    for o in outcomes {
        report.push(o);
    }
    Ok(report)
}

/// Term-by-term equality of two windows over the same indices.
pub fn check_identity_exact(a: &SequenceWindow, b: &SequenceWindow) -> Result<PropertyReport, CheckError> {
    if a.start != b.start || a.len() != b.len() {
        return Err(CheckError::Mismatch(format!(
            "{} covers {}..{} but {} covers {}..{}",
            a.name,
            a.start,
            a.end(),
            b.name,
            b.start,
            b.end()
        )));
    }
    let range = Range::Index {
        start: a.start,
        end: a.end(),
    };
    let mut report = PropertyReport::new(
        Property::Identity,
        format!("{} = {}", a.name, b.name),
        range,
        Method::ExactBigint,
    );
    for (i, (x, y)) in a.values.iter().zip(&b.values).enumerate() {
        report.push(if x == y {
            Outcome::Equal
        } else {
            Outcome::Fail(Counterexample::new(
                a.start + i,
                [("left", format_rational(x)), ("right", format_rational(y))],
            ))
        });
    }
    Ok(report)
}
