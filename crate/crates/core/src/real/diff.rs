use super::mp::{to_f64, Mp};
use super::{domain, EvalError, PrecisionContext, Real, RealFunction};

/// `(ln f(x-h) - 2 ln f(x) + ln f(x+h)) / h²`, the central second difference
/// of `ln f`. The three evaluation points are formed at working precision.
pub fn log_second_difference(
    f: &dyn RealFunction,
    x: impl Into<Real>,
    h: impl Into<Real>,
    ctx: &PrecisionContext,
) -> Result<Real, EvalError> {
    log_second_difference_scaled(f, x, h, ctx).map(|(d, _)| d)
}

/// The second difference together with `(|ln f(x-h)| + 2|ln f(x)| + |ln f(x+h)|) / h²`,
/// the factor by which evaluation errors are amplified.
pub(crate) fn log_second_difference_scaled(
    f: &dyn RealFunction,
    x: impl Into<Real>,
    h: impl Into<Real>,
    ctx: &PrecisionContext,
) -> Result<(Real, f64), EvalError> {
    let x = x.into();
    let h = h.into();
    if !h.is_positive() {
        return Err(domain("log_second_difference", "h > 0", &h));
    }
    let m: Mp = ctx.mp();
    let lo = Real(m.sub(&x.0, &h.0));
    let hi = Real(m.add(&x.0, &h.0));
    let l_lo = f.ln_eval(&lo, ctx)?;
    let l_mid = f.ln_eval(&x, ctx)?;
    let l_hi = f.ln_eval(&hi, ctx)?;
    let num = m.add(&m.sub(&l_lo.0, &m.mul(&m.u(2), &l_mid.0)), &l_hi.0);
    let h2 = m.mul(&h.0, &h.0);
    let scale = (l_lo.to_f64().abs() + 2.0 * l_mid.to_f64().abs() + l_hi.to_f64().abs()).max(1.0) / to_f64(&h2);
    Ok((Real(m.div(&num, &h2)), scale))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::real::Function;

    fn ctx() -> PrecisionContext {
        PrecisionContext::new(160, 1e-30, 10_000).unwrap()
    }

    #[test]
    fn exp_is_log_linear() {
        for x in [-3.0, 0.0, 2.5, 40.0] {
            let d = log_second_difference(&Function::Exp, x, 0.1, &ctx()).unwrap();
            assert!(d.to_f64().abs() < 1e-12);
        }
    }

    #[test]
    fn square_is_log_concave() {
        let sq = |x: &Real, _: &PrecisionContext| -> Result<Real, EvalError> {
            let m = Mp::new(128);
            Ok(Real(m.mul(&x.0, &x.0)))
        };
        let d = log_second_difference(&sq, 1.0, 0.5, &ctx()).unwrap();
        assert!(d.is_negative());
        // ln((1/2)^2) - 2 ln 1 + ln((3/2)^2) = 2 ln(3/4), over 1/4
        assert!((d.to_f64() - 8.0 * 0.75f64.ln()).abs() < 1e-14);
    }

    #[test]
    fn log_convex_functions() {
        let c = ctx();
        for x in [1.5, 2.0, 3.0, 5.0, 10.0] {
            assert!(
                log_second_difference(&Function::Zeta, x, 1e-3, &c)
                    .unwrap()
                    .is_positive(),
                "zeta at {x}"
            );
            assert!(
                log_second_difference(&Function::Bell, x, 1e-3, &c)
                    .unwrap()
                    .is_positive(),
                "bell at {x}"
            );
            for mu in [0.0, 1.0] {
                let f = Function::BesselZeta(mu);
                let loose = c.with_tolerance(1e-20).unwrap();
                assert!(
                    log_second_difference(&f, x, 1e-3, &loose).unwrap().is_positive(),
                    "zeta_{mu} at {x}"
                );
            }
        }
        assert!(log_second_difference(&Function::Zeta, 3.0, 0.01, &c)
            .unwrap()
            .is_positive());
    }

    #[test]
    fn rejects_bad_step() {
        assert!(log_second_difference(&Function::Exp, 1.0, 0.0, &ctx()).is_err());
        assert!(log_second_difference(&Function::Zeta, 1.0, 0.5, &ctx()).is_err());
    }
}
