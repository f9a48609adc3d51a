use astro_float::BigFloat;

use super::gamma::magnitude_bits;
use super::mp::{log2_abs, to_f64, Mp};
use super::{check_nan, domain, EvalError, PrecisionContext, Real};

/// `ln Σ_{k≥1} k^x / k!` to relative error `2^-target` of the sum.
///
/// Terms `t_k = exp(x ln k - ln k!)`. From the first `k ≥ x` on, the ratio
/// `r_k = (1 + 1/k)^x / (k + 1)` is decreasing, so once `r_k < 1/2` the tail
/// past `k` is below `2 t_k r_k`.
fn ln_dobinski_sum(x: &BigFloat, m: Mp, target: usize, max_terms: usize) -> Result<BigFloat, EvalError> {
    let xf = to_f64(x);
    let mut sum = BigFloat::new(m.p);
    let mut ln_fact = BigFloat::new(m.p);
    let one = m.u(1);
    for k in 1..=max_terms {
        let kb = m.u(k as u64);
        let ln_k = m.ln(&kb);
        ln_fact = m.add(&ln_fact, &ln_k);
        let t = m.exp(&m.sub(&m.mul(x, &ln_k), &ln_fact));
        sum = m.add(&sum, &t);
        let kf = k as f64;
        if kf >= xf {
            let r = m.div(
                &m.exp(&m.mul(x, &m.ln(&m.add(&one, &m.recip(&kb))))),
                &m.u(k as u64 + 1),
            );
            if to_f64(&r) < 0.5 {
                let bound = 1.0 + log2_abs(&t) + log2_abs(&r);
                if bound <= log2_abs(&sum) - target as f64 {
                    return check_nan(m.ln(&sum), "bell_real");
                }
            }
        }
    }
    Err(EvalError::PrecisionExhausted {
        function: "bell_real",
        max_terms,
    })
}

fn prepare(x: impl Into<Real>, ctx: &PrecisionContext) -> Result<(Real, Mp), EvalError> {
    let x = x.into();
    if !x.is_positive() {
        return Err(domain("bell_real", "x > 0", &x));
    }
    let m = Mp::new(ctx.mp().p + magnitude_bits(x.to_f64()));
    Ok((x, m))
}

/// `ln B(x)`, where `B(x) = e^-1 Σ_{k≥0} k^x / k!`; absolute error at most the
/// context tolerance times `max(1, ln B(x))`.
pub fn ln_bell_real(x: impl Into<Real>, ctx: &PrecisionContext) -> Result<Real, EvalError> {
    let (x, m) = prepare(x, ctx)?;
    let ln_s = ln_dobinski_sum(&x.0, m, ctx.target_bits() + 4, ctx.max_terms())?;
    Ok(Real(m.sub(&ln_s, &m.u(1))))
}

/// Dobinski's `B(x) = e^-1 Σ_{k≥0} k^x / k!` for `x > 0`, relative error at
/// most the context tolerance. Equals the Bell number `B_n` at `x = n`.
pub fn bell_real(x: impl Into<Real>, ctx: &PrecisionContext) -> Result<Real, EvalError> {
    let (x, m) = prepare(x, ctx)?;
    let ln_s = ln_dobinski_sum(&x.0, m, ctx.target_bits() + 4, ctx.max_terms())?;
    Ok(Real(m.exp(&m.sub(&ln_s, &m.u(1)))))
}

/// `B(x)^{1/x}`, relative error at most the context tolerance.
pub fn bell_root(x: impl Into<Real>, ctx: &PrecisionContext) -> Result<Real, EvalError> {
    let (x, m) = prepare(x, ctx)?;
    let ln_s = ln_dobinski_sum(&x.0, m, ctx.target_bits() + 8, ctx.max_terms())?;
    Ok(Real(m.exp(&m.div(&m.sub(&ln_s, &m.u(1)), &x.0))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::bell;

    fn ctx() -> PrecisionContext {
        PrecisionContext::new(160, 1e-30, 10_000).unwrap()
    }

    #[test]
    fn integer_points_are_bell_numbers() {
        let c = ctx();
        let m = Mp::new(256);
        for n in 1..=30u64 {
            let exact = Real(m.rat(&bell(n as usize)));
            let got = bell_real(n as f64, &c).unwrap();
            assert!(got.rel_diff(&exact) < 10.0 * c.tolerance(), "n = {n}");
        }
        assert!((bell_real(1.0, &c).unwrap().to_f64() - 1.0).abs() < 1e-28);
        assert!((bell_real(2.0, &c).unwrap().to_f64() - 2.0).abs() < 1e-28);
        assert!((bell_real(3.0, &c).unwrap().to_f64() - 5.0).abs() < 1e-28);
    }

    #[test]
    fn large_argument_stays_finite() {
        let c = ctx();
        let m = Mp::new(512);
        let exact = m.ln(&m.rat(&bell(200)));
        let got = ln_bell_real(200.0, &c).unwrap();
        assert!(got.rel_diff(&Real(exact)) < 1e-29);
        assert!(bell_real(400.5, &c).unwrap().log2_abs() > 1024.0);
    }

    #[test]
    fn root_is_consistent() {
        let c = ctx();
        let r = bell_root(7.5, &c).unwrap().to_f64();
        let b = bell_real(7.5, &c).unwrap().to_f64();
        assert!((r - b.powf(1.0 / 7.5)).abs() < 1e-13);
        assert!(bell_real(0.0, &c).is_err());
    }
}
