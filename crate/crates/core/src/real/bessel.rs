use astro_float::BigFloat;

use super::gamma::ln_gamma_mp;
use super::mp::{log2_abs, to_f64, Mp};
use super::{check_nan, domain, EvalError, PrecisionContext, Real};

/// Power series of `J_μ` at a fixed order, with `ln Γ(μ + 1)` computed once.
pub(crate) struct BesselSeries {
    mu: BigFloat,
    ln_gamma_mu1: BigFloat,
    base: Mp,
    target: usize,
    max_terms: usize,
}

/// Hankel's large-argument expansion is used from `x ≥ HANKEL_SCALE · target + μ`,
/// where its smallest term, about `e^{-2x}`, is far below the target.
const HANKEL_SCALE: f64 = 0.4;

/// Value and derivative of `J_μ` at one point.
pub(crate) struct BesselValue {
    pub j: BigFloat,
    pub dj: BigFloat,
}

impl BesselSeries {
    pub fn new(mu: f64, base: Mp, target: usize, max_terms: usize) -> Result<Self, EvalError> {
        if !(mu > -1.0 && mu.is_finite()) {
            return Err(domain("bessel_j", "mu > -1", mu));
        }
        let m = Mp::new(base.p + 16);
        let mu_f = m.f(mu);
        let ln_gamma_mu1 = ln_gamma_mp(&m.add(&mu_f, &m.u(1)), m, target + 16, max_terms)?;
        Ok(BesselSeries {
            mu: mu_f,
            ln_gamma_mu1,
            base,
            target,
            max_terms,
        })
    }

    /// `J_μ(x)` and `J_μ'(x)` for `x > 0`, both with absolute error below
    /// `2^-target`.
    ///
    /// `J = P Σ u_k`, `J' = (P / x) Σ (μ + 2k) u_k` with `P = (x/2)^μ / Γ(μ+1)`
    /// and `u_k = (-x²/4)^k / (k! (μ+1)_k)`. The terms grow to about `e^x`
    /// before decaying, hence the extra `x log2 e` guard bits. Once the term
    /// ratio drops below one the series alternate with decreasing terms, so
    /// the first omitted term bounds the remainder.
    pub fn eval(&self, x: &BigFloat) -> Result<BesselValue, EvalError> {
        let xf = to_f64(x);
        let guard = (xf.abs() * std::f64::consts::LOG2_E).ceil() as usize + 8;
        let m = Mp::new(self.base.p.max(self.target + 16) + guard);
        let half_x = m.mul(x, &m.f(0.5));
        let ln_p = m.sub(&m.mul(&self.mu, &m.ln(&half_x)), &self.ln_gamma_mu1);
        let p = m.exp(&ln_p);
        let log2_p = log2_abs(&p);
        let q = m.mul(&half_x, &half_x).neg();
        let mut u = m.u(1);
        let mut s = m.u(1);
        let mut ds = self.mu.clone();
        let log2_x = xf.abs().log2();
        let target = self.target as f64;
        let muf = to_f64(&self.mu);
        for k in 1..=self.max_terms {
            let kf = k as f64;
            let denom = m.mul(&m.u(k as u64), &m.add(&self.mu, &m.u(k as u64)));
            u = m.div(&m.mul(&u, &q), &denom);
            s = m.add(&s, &u);
            let weight = m.add(&self.mu, &m.u(2 * k as u64));
            ds = m.add(&ds, &m.mul(&weight, &u));
            let ratio = xf * xf / 4.0 / ((kf + 1.0) * (kf + 1.0 + muf));
            if ratio < 1.0 {
                let lu = log2_abs(&u) + log2_p;
                let ldu = lu + (muf + 2.0 * kf + 2.0).log2() - log2_x;
                if lu < -target && ldu < -target {
                    let j = check_nan(m.mul(&p, &s), "bessel_j")?;
                    let dj = check_nan(m.div(&m.mul(&p, &ds), x), "bessel_j")?;
                    return Ok(BesselValue { j, dj });
                }
            }
        }
        Err(EvalError::PrecisionExhausted {
            function: "bessel_j",
            max_terms: self.max_terms,
        })
    }

    /// Same contract as [`eval`](Self::eval), switching to the Hankel
    /// expansion for large `x` where the power series needs many guard bits.
    pub fn eval_fast(&self, x: &BigFloat) -> Result<BesselValue, EvalError> {
        let xf = to_f64(x);
        let mu = to_f64(&self.mu);
        if xf >= HANKEL_SCALE * self.target as f64 + mu.abs() {
            if let Some(v) = self.hankel(x)? {
                return Ok(v);
            }
        }
        self.eval(x)
    }

    /// `J_ν(x) = sqrt(2/(πx)) (P cos ω - Q sin ω)`, `ω = x - (ν/2 + 1/4)π`,
    /// with `P`, `Q` the even and odd parts of `Σ (-1)^⌊k/2⌋ a_k(ν) / x^k`,
    /// `a_k(ν) = Π_{i≤k} (4ν² - (2i-1)²) / (k! 8^k)`. For real `x` the
    /// remainders of `P` and `Q` are bounded by their first omitted terms once
    /// `k > ν - 1/2`. Returns `None` if the terms stop shrinking first.
    fn hankel_one(&self, m: Mp, nu: &BigFloat, x: &BigFloat) -> Result<Option<BigFloat>, EvalError> {
        let four_nu2 = m.mul(&m.u(4), &m.mul(nu, nu));
        let eight_x = m.mul(&m.u(8), x);
        let nuf = to_f64(nu);
        let amp_log2 = -0.5 * (to_f64(x) * std::f64::consts::PI / 2.0).log2();
        let limit = -(self.target as f64) - 2.0 - amp_log2;
        let mut p = m.u(1);
        let mut q = BigFloat::new(m.p);
        let mut term = m.u(1);
        let mut prev = 0.0f64;
        for k in 1..=self.max_terms {
            let odd = m.u((2 * k - 1) as u64);
            let factor = m.div(&m.sub(&four_nu2, &m.mul(&odd, &odd)), &m.mul(&m.u(k as u64), &eight_x));
            term = m.mul(&term, &factor);
            let signed = if (k / 2) % 2 == 1 { term.neg() } else { term.clone() };
            if k % 2 == 0 {
                p = m.add(&p, &signed);
            } else {
                q = m.add(&q, &signed);
            }
            let size = log2_abs(&term);
            let kf = k as f64;
            if kf > nuf + 1.0 {
                if size < limit {
                    break;
                }
                if size > prev {
                    return Ok(None);
                }
            }
            if k == self.max_terms {
                return Ok(None);
            }
            prev = size;
        }
        let pi = m.pi();
        let omega = m.sub(x, &m.mul(&m.add(&m.mul(nu, &m.f(0.5)), &m.f(0.25)), &pi));
        let amp = m.sqrt(&m.div(&m.u(2), &m.mul(&pi, x)));
        let v = m.mul(&amp, &m.sub(&m.mul(&p, &m.cos(&omega)), &m.mul(&q, &m.sin(&omega))));
        Ok(Some(check_nan(v, "bessel_j")?))
    }

    fn hankel(&self, x: &BigFloat) -> Result<Option<BesselValue>, EvalError> {
        let m = Mp::new(self.base.p.max(self.target + 16) + 16);
        let Some(j) = self.hankel_one(m, &self.mu, x)? else {
            return Ok(None);
        };
        let nu1 = m.sub(&self.mu, &m.u(1));
        let Some(j1) = self.hankel_one(m, &nu1, x)? else {
            return Ok(None);
        };
        // J_μ' = J_{μ-1} - (μ/x) J_μ
        let dj = m.sub(&j1, &m.div(&m.mul(&self.mu, &j), x));
        Ok(Some(BesselValue { j, dj }))
    }
}

/// `J_μ(x)` from its power series, with absolute error at most the context
/// tolerance.
pub fn bessel_j(mu: f64, x: impl Into<Real>, ctx: &PrecisionContext) -> Result<Real, EvalError> {
    let x = x.into();
    if x.is_negative() {
        return Err(domain("bessel_j", "x >= 0", &x));
    }
    if !(mu > -1.0 && mu.is_finite()) {
        return Err(domain("bessel_j", "mu > -1", mu));
    }
    if x.is_zero() {
        return if mu == 0.0 {
            Ok(Real::from(1))
        } else if mu > 0.0 {
            Ok(Real::from(0))
        } else {
            Err(domain("bessel_j", "x > 0 when mu < 0", &x))
        };
    }
    let series = BesselSeries::new(mu, ctx.mp(), ctx.target_bits(), ctx.max_terms())?;
    series.eval(&x.0).map(|v| Real(v.j))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> PrecisionContext {
        PrecisionContext::new(128, 1e-25, 10_000).unwrap()
    }

    #[test]
    fn values_at_origin() {
        assert_eq!(bessel_j(0.0, 0.0, &ctx()).unwrap().to_f64(), 1.0);
        assert_eq!(bessel_j(1.0, 0.0, &ctx()).unwrap().to_f64(), 0.0);
        assert!(bessel_j(-0.5, 0.0, &ctx()).is_err());
        assert!(bessel_j(-1.0, 1.0, &ctx()).is_err());
    }

    #[test]
    fn half_integer_closed_forms() {
        // J_{1/2}(x) = sqrt(2/(πx)) sin x, J_{-1/2}(x) = sqrt(2/(πx)) cos x
        let c = ctx();
        for x in [0.3f64, 1.0, 4.0, 12.5, 30.0] {
            let amp = (2.0 / (std::f64::consts::PI * x)).sqrt();
            let jp = bessel_j(0.5, x, &c).unwrap().to_f64();
            let jm = bessel_j(-0.5, x, &c).unwrap().to_f64();
            assert!((jp - amp * x.sin()).abs() < 1e-14, "x = {x}");
            assert!((jm - amp * x.cos()).abs() < 1e-14, "x = {x}");
        }
    }

    #[test]
    fn first_zero_of_j0() {
        let v = bessel_j(0.0, 2.404825557695773, &ctx()).unwrap().to_f64();
        assert!(v.abs() < 1e-12);
    }

    #[test]
    fn reference_values() {
        // J_0(1), J_1(1), J_2(10)
        let c = ctx();
        assert!((bessel_j(0.0, 1.0, &c).unwrap().to_f64() - 0.7651976865579666).abs() < 1e-15);
        assert!((bessel_j(1.0, 1.0, &c).unwrap().to_f64() - 0.4400505857449335).abs() < 1e-15);
        assert!((bessel_j(2.0, 10.0, &c).unwrap().to_f64() - 0.2546303136851206).abs() < 1e-15);
    }

    #[test]
    fn hankel_agrees_with_series() {
        let m = Mp::new(200);
        for mu in [-0.7, 0.0, 1.0, 2.5] {
            let s = BesselSeries::new(mu, m, 120, 100_000).unwrap();
            for x in [60.0, 95.5, 210.0] {
                let a = s.eval(&m.f(x)).unwrap();
                let b = s.hankel(&m.f(x)).unwrap().expect("hankel in range");
                assert!(log2_abs(&m.sub(&a.j, &b.j)) < -118.0, "mu = {mu}, x = {x}");
                assert!(log2_abs(&m.sub(&a.dj, &b.dj)) < -110.0, "mu = {mu}, x = {x}");
            }
        }
    }

    #[test]
    fn derivative_matches_recurrence() {
        // J_0' = -J_1
        let m = Mp::new(160);
        let s0 = BesselSeries::new(0.0, m, 100, 10_000).unwrap();
        let s1 = BesselSeries::new(1.0, m, 100, 10_000).unwrap();
        for x in [0.5, 3.0, 17.0] {
            let d0 = to_f64(&s0.eval(&m.f(x)).unwrap().dj);
            let j1 = to_f64(&s1.eval(&m.f(x)).unwrap().j);
            assert!((d0 + j1).abs() < 1e-15, "x = {x}");
        }
    }
}
