use astro_float::BigFloat;

use super::bessel_zeta::bessel_zeta_mp;
use super::gamma::{ln_gamma_mp, magnitude_bits};
use super::mp::{to_f64, Mp};
use super::zeta::hurwitz_mp;
use super::{check_nan, domain, EvalError, PrecisionContext, Real};

/// `θ(x) = (2 ζ(x) Γ(x+1))^{1/x}` for `x > 1`, relative error at most the
/// context tolerance. Computed as `exp((ln 2 + ln ζ(x) + ln Γ(x+1)) / x)`.
pub fn theta(x: impl Into<Real>, ctx: &PrecisionContext) -> Result<Real, EvalError> {
    let x = x.into();
    if !(x > Real::from(1)) {
        return Err(domain("theta", "x > 1", &x));
    }
    let xf = x.to_f64();
    let target = ctx.target_bits() + 8;
    let m = Mp::new(ctx.mp().p + magnitude_bits(xf + 1.0));
    let one = m.u(1);
    let zeta = hurwitz_mp(&x.0, &one, m, target, ctx.max_terms())?;
    let lg = ln_gamma_mp(&m.add(&x.0, &one), m, target, ctx.max_terms())?;
    let log = m.add(&m.add(&m.ln2(), &m.ln(&zeta)), &lg);
    Ok(Real(check_nan(m.exp(&m.div(&log, &x.0)), "theta")?))
}

pub(crate) fn log_theta_mu_numerator(
    mu: f64,
    x: &BigFloat,
    m: Mp,
    target: usize,
    max_terms: usize,
) -> Result<BigFloat, EvalError> {
    let half_x = m.mul(x, &m.f(0.5));
    let mu_f = m.f(mu);
    let one = m.u(1);
    let zeta = bessel_zeta_mp(mu, x, m, target, max_terms)?.value.0;
    let lg_mu = ln_gamma_mp(&m.add(&mu_f, &one), m, target, max_terms)?;
    let lg_a = ln_gamma_mp(&half_x, m, target, max_terms)?;
    let lg_b = ln_gamma_mp(&m.add(&m.add(&half_x, &mu_f), &one), m, target, max_terms)?;
    let log = m.add(&m.sub(&m.ln2(), &lg_mu), &m.add(&lg_a, &lg_b));
    Ok(m.add(&log, &m.ln(&zeta)))
}

/// `θ_μ(x) = ((2/Γ(μ+1)) Γ(x/2) Γ(x/2 + μ + 1) ζ_μ(x))^{1/x}` for `μ ≥ 0`,
/// `x > 1`, relative error at most the context tolerance. `μ!` is read as
/// `Γ(μ+1)`, so non-integer orders are allowed.
pub fn theta_mu(mu: f64, x: impl Into<Real>, ctx: &PrecisionContext) -> Result<Real, EvalError> {
    let x = x.into();
    if !(mu >= 0.0 && mu.is_finite()) {
        return Err(domain("theta_mu", "mu >= 0", mu));
    }
    if !(x > Real::from(1)) {
        return Err(domain("theta_mu", "x > 1", &x));
    }
    let xf = to_f64(&x.0);
    let m = Mp::new(ctx.mp().p + magnitude_bits(xf / 2.0 + mu + 1.0) + 1);
    let log = log_theta_mu_numerator(mu, &x.0, m, ctx.target_bits() + 8, ctx.max_terms())?;
    Ok(Real(check_nan(m.exp(&m.div(&log, &x.0)), "theta_mu")?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{a_mu, bernoulli_abs_even, int};

    fn ctx() -> PrecisionContext {
        PrecisionContext::new(160, 1e-30, 10_000).unwrap()
    }

    #[test]
    fn theta_at_two() {
        let c = ctx();
        let t = theta(2.0, &c).unwrap();
        let m = Mp::new(256);
        // θ²(2) / (4π²) = |B_2| = 1/6
        let ratio = m.div(&m.mul(&t.0, &t.0), &m.mul(&m.u(4), &m.powi(&m.pi(), 2)));
        let sixth = Real(m.div(&m.u(1), &m.u(6)));
        assert!(Real(ratio).rel_diff(&sixth) < 1e-29);
        let direct = (2.0 * std::f64::consts::PI.powi(2) / 3.0).sqrt();
        assert!((t.to_f64() - direct).abs() < 1e-14);
    }

    #[test]
    fn theta_squared_recovers_bernoulli_roots() {
        let c = ctx();
        let m = Mp::new(256);
        let four_pi2 = m.mul(&m.u(4), &m.powi(&m.pi(), 2));
        for n in 1..=15usize {
            let t = theta(2.0 * n as f64, &c).unwrap();
            let lhs = m.div(&m.mul(&t.0, &t.0), &four_pi2);
            let b = m.rat(&bernoulli_abs_even(n));
            let rhs = m.exp(&m.div(&m.ln(&b), &m.u(n as u64)));
            assert!(Real(lhs).rel_diff(&Real(rhs)) < 1e-28, "n = {n}");
        }
    }

    #[test]
    fn theta_increases_past_six() {
        let c = ctx();
        assert!(theta(6.0, &c).unwrap() < theta(6.5, &c).unwrap());
        assert!(theta(200.0, &c).unwrap() < theta(200.5, &c).unwrap());
        assert!(theta(1.0, &c).is_err());
    }

    #[test]
    fn theta_mu_small_argument() {
        // θ_0(2) = (2 Γ(1) Γ(2) / 4)^{1/2}
        let got = theta_mu(0.0, 2.0, &ctx()).unwrap().to_f64();
        assert!((got - 0.5f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn theta_mu_even_arguments_match_exact_sequence() {
        let c = ctx();
        let m = Mp::new(256);
        for mu in [0u32, 1] {
            let q = int(mu as i64);
            for n in 2..=20usize {
                let t = theta_mu(mu as f64, 2.0 * n as f64, &c).unwrap();
                let lhs = m.mul(&m.u(4), &m.mul(&t.0, &t.0));
                let a = m.rat(&a_mu(&q, n).unwrap());
                let rhs = m.exp(&m.div(&m.ln(&a), &m.u(n as u64)));
                assert!(
                    Real(lhs).rel_diff(&Real(rhs)) < 10.0 * c.tolerance(),
                    "mu = {mu}, n = {n}"
                );
            }
        }
    }

    #[test]
    fn theta_mu_increasing_past_threshold() {
        let c = PrecisionContext::new(128, 1e-20, 10_000).unwrap();
        assert!(theta_mu(1.0, 250.0, &c).unwrap() < theta_mu(1.0, 251.0, &c).unwrap());
        assert!(theta_mu(-0.5, 3.0, &c).is_err());
    }
}
