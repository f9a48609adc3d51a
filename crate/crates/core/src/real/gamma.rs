use std::collections::HashMap;
use std::f64::consts::{LN_2, TAU};
use std::sync::{Arc, Mutex};

use astro_float::BigFloat;

use super::mp::{log2_abs, to_f64, Mp};
use super::{check_nan, domain, EvalError, PrecisionContext, Real};
use crate::exact::{bernoulli, lock};

pub(crate) type CoeffCache = Mutex<Option<HashMap<usize, Arc<Vec<BigFloat>>>>>;

static STIRLING: CoeffCache = Mutex::new(None);

/// The first `count` entries of a coefficient table, where entry `k - 1` is
/// `gen(mp, k)`. Tables are kept per precision rounded up to a multiple of 64
/// bits and extended in place.
pub(crate) fn cached_coeffs(
    cache: &CoeffCache,
    m: Mp,
    count: usize,
    gen: impl Fn(Mp, usize) -> BigFloat,
) -> Arc<Vec<BigFloat>> {
    let p = m.p.div_ceil(64) * 64;
    let mut guard = lock(cache);
    let map = guard.get_or_insert_with(HashMap::new);
    let old = map.get(&p).cloned().unwrap_or_default();
    if old.len() >= count {
        return old;
    }
    let mp = Mp::new(p);
    let mut coeffs: Vec<BigFloat> = old.as_ref().clone();
    coeffs.extend((old.len() + 1..=count).map(|k| gen(mp, k)));
    let arc = Arc::new(coeffs);
    map.insert(p, arc.clone());
    arc
}

/// `B_{2k} / (2k (2k - 1))` for `k = 1..=count`.
fn stirling_coeffs(m: Mp, count: usize) -> Arc<Vec<BigFloat>> {
    cached_coeffs(&STIRLING, m, count, |m, k| {
        let d = (2 * k * (2 * k - 1)) as u64;
        m.div(&m.rat(&bernoulli(2 * k)), &m.u(d))
    })
}

/// Extra bits needed so that an absolute error target survives a result of
/// size about `x ln x`.
pub(crate) fn magnitude_bits(x: f64) -> usize {
    let x = x.abs().max(2.0);
    (x * x.ln()).log2().max(0.0).ceil() as usize + 4
}

/// `ln Γ(x)` for `x > 0` with absolute error below `2^-target`.
///
/// Stirling series evaluated at `y = x + s`, with the shift `s` chosen so the
/// smallest series term is below the target, then `ln(x (x+1) ... (x+s-1))`
/// divided out. For real `y > 0` the remainder is bounded by the first
/// omitted term.
pub(crate) fn ln_gamma_mp(x: &BigFloat, m: Mp, target: usize, max_terms: usize) -> Result<BigFloat, EvalError> {
    let y0 = (target as f64 * LN_2 / TAU).ceil() + 2.0;
    let xf = to_f64(x);
    let shift = if xf < y0 { (y0 - xf).ceil() as usize } else { 0 };
    let mut prod = m.u(1);
    let mut y = x.clone();
    for _ in 0..shift {
        prod = m.mul(&prod, &y);
        y = m.add(&y, &m.u(1));
    }
    let half = m.f(0.5);
    let ln_y = m.ln(&y);
    let ln_2pi = m.ln(&m.mul(&m.u(2), &m.pi()));
    let mut sum = m.add(&m.sub(&m.mul(&m.sub(&y, &half), &ln_y), &y), &m.mul(&half, &ln_2pi));

    let count = ((target as f64 * 0.35).ceil() as usize + 8).min(max_terms.max(8));
    let coeffs = stirling_coeffs(m, count);
    let inv_y = m.recip(&y);
    let inv_y2 = m.mul(&inv_y, &inv_y);
    let mut ypow = inv_y;
    let mut converged = false;
    for c in coeffs.iter() {
        let term = m.mul(c, &ypow);
        sum = m.add(&sum, &term);
        if log2_abs(&term) < -(target as f64) {
            converged = true;
            break;
        }
        ypow = m.mul(&ypow, &inv_y2);
    }
    if !converged {
        return Err(EvalError::PrecisionExhausted {
            function: "ln_gamma",
            max_terms: count,
        });
    }
    if shift > 0 {
        sum = m.sub(&sum, &m.ln(&prod));
    }
    check_nan(sum, "ln_gamma")
}

/// `ln Γ(x)` for real `x > 0`.
///
/// Error contract: `|error| ≤ tolerance · max(1, |ln Γ(x)|)`, i.e. relative
/// away from the zeros of `ln Γ` at 1 and 2, absolute near them.
pub fn ln_gamma(x: impl Into<Real>, ctx: &PrecisionContext) -> Result<Real, EvalError> {
    let x = x.into();
    if !x.is_positive() {
        return Err(domain("ln_gamma", "x > 0", &x));
    }
    let m = Mp::new(ctx.mp().p + magnitude_bits(x.to_f64()));
    ln_gamma_mp(&x.0, m, ctx.target_bits(), ctx.max_terms()).map(Real)
}

fn ln_gamma_minus(
    x: &Real,
    ctx: &PrecisionContext,
    bound: impl Fn(Mp, &BigFloat) -> BigFloat,
) -> Result<bool, EvalError> {
    if !x.is_positive() {
        return Err(domain("gamma_lower_bound", "x > 0", x));
    }
    let m = Mp::new(ctx.mp().p + magnitude_bits(x.to_f64()));
    let lg = ln_gamma_mp(&x.0, m, ctx.target_bits(), ctx.max_terms())?;
    let diff = m.sub(&lg, &bound(m, &x.0));
    Ok(diff.is_positive() && !diff.is_zero())
}

/// Whether `Γ(x) > sqrt(2π/x) (x/e)^x`, evaluated in log space.
///
/// This is the Stirling lower bound; it holds for every `x > 0` because the
/// Stirling remainder `ln Γ(x) - (x - 1/2) ln x + x - ln(2π)/2` is positive.
pub fn gamma_lower_bound_holds(x: impl Into<Real>, ctx: &PrecisionContext) -> Result<bool, EvalError> {
    ln_gamma_minus(&x.into(), ctx, |m, x| {
        let ln_x = m.ln(x);
        let ln_2pi = m.ln(&m.mul(&m.u(2), &m.pi()));
        let half = m.f(0.5);
        m.add(&m.mul(&half, &m.sub(&ln_2pi, &ln_x)), &m.mul(x, &m.sub(&ln_x, &m.u(1))))
    })
}

/// Whether `Γ(x) > sqrt(2πx) (x/e)^x`. This variant is only true for small
/// `x` (it fails from `x ≈ 1.2` on, since the right side is `≈ Γ(x+1)`); it is
/// kept so reports can show the difference between the two forms.
pub fn stirling_lower_bound_as_printed_holds(x: impl Into<Real>, ctx: &PrecisionContext) -> Result<bool, EvalError> {
    ln_gamma_minus(&x.into(), ctx, |m, x| {
        let ln_x = m.ln(x);
        let ln_2pi = m.ln(&m.mul(&m.u(2), &m.pi()));
        let half = m.f(0.5);
        m.add(&m.mul(&half, &m.add(&ln_2pi, &ln_x)), &m.mul(x, &m.sub(&ln_x, &m.u(1))))
    })
}
