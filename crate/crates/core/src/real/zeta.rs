use std::f64::consts::{LN_2, TAU};
use std::sync::{Arc, Mutex};

use astro_float::BigFloat;
use num_rational::BigRational;

use super::gamma::{cached_coeffs, CoeffCache};
use super::mp::{log2_abs, to_f64, Mp};
use super::{check_nan, domain, EvalError, PrecisionContext, Real};
use crate::exact::{bernoulli, factorial};

static EULER_MACLAURIN: CoeffCache = Mutex::new(None);

/// `B_{2j} / (2j)!` for `j = 1..=count`.
fn em_coeffs(m: Mp, count: usize) -> Arc<Vec<BigFloat>> {
    cached_coeffs(&EULER_MACLAURIN, m, count, |m, j| {
        let q = bernoulli(2 * j) / BigRational::from_integer(factorial(2 * j as u64));
        m.rat(&q)
    })
}

/// Bits needed on top of the target so `exp(-s ln x)` keeps its relative
/// accuracy.
fn exponent_bits(s: f64, x: f64) -> usize {
    let mag = (s.abs() * x.abs().max(2.0).ln()).max(1.0);
    mag.log2().ceil() as usize + 4
}

/// Hurwitz `ζ(s, a)` for real `s > 1`, `a > 0`, relative error below
/// `2^-target`.
///
/// Euler–Maclaurin at cut `x = a + N`. Since `t^-s` is completely monotone
/// the remainder after any correction term is bounded by the next one, and
/// choosing `2πx ≥ target·ln 2 + s` makes that term small enough before the
/// series starts diverging.
pub(crate) fn hurwitz_mp(
    s: &BigFloat,
    a: &BigFloat,
    m: Mp,
    target: usize,
    max_terms: usize,
) -> Result<BigFloat, EvalError> {
    let sf = to_f64(s);
    let mut x_min = (target as f64 * LN_2 + sf) / TAU + 2.0;
    // the bound ignores polynomial factors in s; widen the cut until it holds
    for _ in 0..8 {
        if let Some(v) = euler_maclaurin(s, a, x_min, m, target, max_terms)? {
            return Ok(v);
        }
        x_min *= 1.5;
    }
    Err(EvalError::PrecisionExhausted {
        function: "hurwitz_zeta",
        max_terms,
    })
}

fn euler_maclaurin(
    s: &BigFloat,
    a: &BigFloat,
    x_min: f64,
    m: Mp,
    target: usize,
    max_terms: usize,
) -> Result<Option<BigFloat>, EvalError> {
    let sf = to_f64(s);
    let af = to_f64(a);
    let n = if af < x_min { (x_min - af).ceil() as usize } else { 0 };
    if n > max_terms {
        return Err(EvalError::PrecisionExhausted {
            function: "hurwitz_zeta",
            max_terms,
        });
    }
    let m = Mp::new(m.p + exponent_bits(sf, af.max(x_min)));
    let neg_s = s.neg();
    let one = m.u(1);
    let mut sum = BigFloat::new(m.p);
    let mut x = a.clone();
    for _ in 0..n {
        sum = m.add(&sum, &m.exp(&m.mul(&neg_s, &m.ln(&x))));
        x = m.add(&x, &one);
    }
    let x_s = m.exp(&m.mul(&neg_s, &m.ln(&x)));
    sum = m.add(&sum, &m.div(&m.mul(&x, &x_s), &m.sub(s, &one)));
    sum = m.add(&sum, &m.mul(&m.f(0.5), &x_s));

    // terms shrink while s + 2j < 2πx
    let cap = ((TAU * to_f64(&x) - sf) / 2.0).max(1.0).ceil() as usize;
    let inv_x = m.recip(&x);
    let inv_x2 = m.mul(&inv_x, &inv_x);
    let mut poch = s.clone();
    let mut xp = m.mul(&x_s, &inv_x);
    let mut coeffs = em_coeffs(m, cap.min(16));
    for j in 1..=cap {
        if j > coeffs.len() {
            coeffs = em_coeffs(m, cap.min(2 * coeffs.len()));
        }
        let term = m.mul(&m.mul(&coeffs[j - 1], &poch), &xp);
        sum = m.add(&sum, &term);
        if log2_abs(&term) < log2_abs(&sum) - target as f64 {
            return check_nan(sum, "hurwitz_zeta").map(Some);
        }
        let k = (2 * j) as u64;
        poch = m.mul(&poch, &m.mul(&m.add(s, &m.u(k - 1)), &m.add(s, &m.u(k))));
        xp = m.mul(&xp, &inv_x2);
    }
    Ok(None)
}

/// Hurwitz zeta `ζ(s, a) = Σ_{k≥0} (k + a)^-s` for `s > 1`, `a > 0`, with
/// relative error at most the context tolerance.
pub fn hurwitz_zeta(s: impl Into<Real>, a: impl Into<Real>, ctx: &PrecisionContext) -> Result<Real, EvalError> {
    let s = s.into();
    let a = a.into();
    if !(s > Real::from(1)) {
        return Err(domain("hurwitz_zeta", "s > 1", &s));
    }
    if !a.is_positive() {
        return Err(domain("hurwitz_zeta", "a > 0", &a));
    }
    hurwitz_mp(&s.0, &a.0, ctx.mp(), ctx.target_bits(), ctx.max_terms()).map(Real)
}

/// Riemann `ζ(x)` for real `x > 1`, relative error at most the context
/// tolerance.
pub fn riemann_zeta_real(x: impl Into<Real>, ctx: &PrecisionContext) -> Result<Real, EvalError> {
    let x = x.into();
    if !(x > Real::from(1)) {
        return Err(domain("riemann_zeta_real", "x > 1", &x));
    }
    let m = ctx.mp();
    hurwitz_mp(&x.0, &m.u(1), m, ctx.target_bits(), ctx.max_terms()).map(Real)
}
