use astro_float::BigFloat;

use super::mp::{abs, log2_abs, to_f64, Mp};
use super::zeros::zeros_mp;
use super::zeta::hurwitz_mp;
use super::{domain, EvalError, PrecisionContext, Real};

/// Lower bound `π (1 - δ)` on zero spacing used by the tail majorant, for
/// `μ ≥ 0`.
pub const SPACING_SLACK_NONNEGATIVE_MU: f64 = 0.05;
/// Same, for `-1 < μ < 0`.
pub const SPACING_SLACK_NEGATIVE_MU: f64 = 0.25;

const INITIAL_ZEROS: usize = 8;

fn slack(mu: f64) -> f64 {
    if mu >= 0.0 {
        SPACING_SLACK_NONNEGATIVE_MU
    } else {
        SPACING_SLACK_NEGATIVE_MU
    }
}

/// How the part of `Σ j^-x` beyond the summed zeros was handled.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TailMethod {
    /// Dropped; bounded by [`tail_majorant`].
    Majorant,
    /// Added as McMahon-expanded zeros summed through Hurwitz zeta values.
    Asymptotic,
}

impl TailMethod {
    pub fn name(self) -> &'static str {
        match self {
            TailMethod::Majorant => "majorant",
            TailMethod::Asymptotic => "asymptotic",
        }
    }
}

/// A Bessel zeta value with the bookkeeping behind it.
#[derive(Debug, Clone)]
pub struct BesselZetaEval {
    pub value: Real,
    pub zeros_used: usize,
    pub tail: TailMethod,
    /// Bound (majorant) or estimate (asymptotic) of the remaining error.
    pub tail_error: Real,
}

fn majorant_mp(m: Mp, mu: f64, x: &BigFloat, j_k: &BigFloat) -> BigFloat {
    let one = m.u(1);
    let e = m.sub(&one, x);
    let num = m.exp(&m.mul(&e, &m.ln(j_k)));
    let den = m.mul(&m.mul(&m.sub(x, &one), &m.pi()), &m.f(1.0 - slack(mu)));
    m.div(&num, &den)
}

/// `j_K^{1-x} / ((x-1) π (1-δ))`, which bounds `Σ_{n>K} j_{μ,n}^-x` whenever
/// all later zeros satisfy `j_{μ,n} ≥ j_{μ,K} + (n-K) π (1-δ)`.
pub fn tail_majorant(mu: f64, x: impl Into<Real>, j_k: &Real, bits: usize) -> Real {
    let m = Mp::new(bits);
    Real(majorant_mp(m, mu, &x.into().0, &j_k.0))
}

/// `Σ_{n ≥ K+1} j_{μ,n}^-x` from McMahon's expansion
/// `j = a (1 - E(a^-2))`, `a = (n + μ/2 - 1/4) π`, with `E` through `a^-8`.
/// Expanding `(1 - E)^-x = Σ g_i a^-2i` turns each order into a Hurwitz zeta
/// value. Returns the sum and the size of its last included order, which
/// serves as the error estimate.
fn asymptotic_tail(
    m: Mp,
    mu: f64,
    x: &BigFloat,
    k: usize,
    target: usize,
    max_terms: usize,
) -> Result<(BigFloat, BigFloat), EvalError> {
    let mm = m.f(4.0 * mu * mu);
    let one = m.u(1);
    let m1 = m.sub(&mm, &one);
    let poly = |coeffs: &[f64]| {
        coeffs
            .iter()
            .rev()
            .fold(BigFloat::new(m.p), |acc, &c| m.add(&m.mul(&acc, &mm), &m.f(c)))
    };
    let c1 = m.div(&m1, &m.u(8));
    let c2 = m.div(&m.mul(&m.mul(&m.u(4), &m1), &poly(&[-31.0, 7.0])), &m.u(3 * 512));
    let c3 = m.div(
        &m.mul(&m.mul(&m.u(32), &m1), &poly(&[3779.0, -982.0, 83.0])),
        &m.u(15 * 32_768),
    );
    let c4 = m.div(
        &m.mul(
            &m.mul(&m.u(64), &m1),
            &poly(&[-6_277_237.0, 1_585_743.0, -153_855.0, 6949.0]),
        ),
        &m.u(105 * 2_097_152),
    );
    let e = [BigFloat::new(m.p), c1, c2, c3, c4];

    let mul = |a: &[BigFloat; 5], b: &[BigFloat; 5]| -> [BigFloat; 5] {
        std::array::from_fn(|n| (0..=n).fold(BigFloat::new(m.p), |acc, i| m.add(&acc, &m.mul(&a[i], &b[n - i]))))
    };
    // L = -ln(1 - E) = Σ E^r / r
    let mut l: [BigFloat; 5] = std::array::from_fn(|_| BigFloat::new(m.p));
    let mut power = e.clone();
    for r in 1..=4u64 {
        for n in 0..5 {
            l[n] = m.add(&l[n], &m.div(&power[n], &m.u(r)));
        }
        power = mul(&power, &e);
    }
    // G = exp(x L): g_n = (1/n) Σ_k k x L_k g_{n-k}
    let mut g: Vec<BigFloat> = vec![one.clone()];
    for n in 1..5 {
        let mut acc = BigFloat::new(m.p);
        for kk in 1..=n {
            let t = m.mul(&m.mul(&m.u(kk as u64), &m.mul(x, &l[kk])), &g[n - kk]);
            acc = m.add(&acc, &t);
        }
        g.push(m.div(&acc, &m.u(n as u64)));
    }

    let shift = m.add(&m.u(k as u64 + 1), &m.f(mu / 2.0 - 0.25));
    let ln_pi = m.ln(&m.pi());
    let mut sum = BigFloat::new(m.p);
    let mut last = BigFloat::new(m.p);
    for (i, gi) in g.iter().enumerate() {
        let s = m.add(x, &m.u(2 * i as u64));
        let z = hurwitz_mp(&s, &shift, m, target, max_terms)?;
        let term = m.mul(&m.mul(gi, &m.exp(&m.mul(&s.neg(), &ln_pi))), &z);
        sum = m.add(&sum, &term);
        last = term;
    }
    Ok((sum, abs(&last)))
}

pub(crate) fn bessel_zeta_mp(
    mu: f64,
    x: &BigFloat,
    m: Mp,
    target: usize,
    max_terms: usize,
) -> Result<BesselZetaEval, EvalError> {
    let xf = to_f64(x);
    let zero_bits = target + (xf + 1.0).log2().ceil() as usize + 8;
    // room for exp(-x ln j) with ln j below 16
    let m = Mp::new(m.p + 8 + (xf * 16.0).max(2.0).log2().ceil() as usize);
    let mut k = INITIAL_ZEROS.min(max_terms);
    let neg_x = x.neg();
    let mut head = BigFloat::new(m.p);
    let mut summed = 0;
    loop {
        let (zeros, _) = zeros_mp(mu, k, zero_bits, max_terms)?;
        for j in &zeros[summed..] {
            head = m.add(&head, &m.exp(&m.mul(&neg_x, &m.ln(j))));
        }
        summed = k;
        let limit = log2_abs(&head) - target as f64;
        let majorant = majorant_mp(m, mu, x, &zeros[k - 1]);
        if log2_abs(&majorant) <= limit {
            return Ok(BesselZetaEval {
                value: Real(head),
                zeros_used: k,
                tail: TailMethod::Majorant,
                tail_error: Real(majorant),
            });
        }
        let (tail, err) = asymptotic_tail(m, mu, x, k, target + 8, max_terms)?;
        let plausible = tail.is_positive() && tail.cmp(&majorant).is_some_and(|c| c <= 0);
        if plausible && log2_abs(&err) <= limit {
            let value = m.add(&head, &tail);
            return Ok(BesselZetaEval {
                value: Real(value),
                zeros_used: k,
                tail: TailMethod::Asymptotic,
                tail_error: Real(err),
            });
        }
        if k >= max_terms {
            return Err(EvalError::TailNotConverged { mu, x: xf, zeros: k });
        }
        k = (k + (k / 2).max(4)).min(max_terms);
    }
}

fn check_args(function: &'static str, mu: f64, x: &Real) -> Result<(), EvalError> {
    if !(mu > -1.0 && mu.is_finite()) {
        return Err(domain(function, "mu > -1", mu));
    }
    if !(*x > Real::from(1)) {
        return Err(domain(function, "x > 1", x));
    }
    Ok(())
}

/// `ζ_μ(x) = Σ_n j_{μ,n}^-x` with relative error at most the context
/// tolerance, together with how the tail was treated.
///
/// After summing `K` zeros the tail is either dropped, when the spacing
/// majorant is already below tolerance, or replaced by the McMahon
/// asymptotic sum; `K` grows until one of the two meets the tolerance. The
/// asymptotic sum is only accepted when it lies below the majorant.
pub fn bessel_zeta_with_info(mu: f64, x: impl Into<Real>, ctx: &PrecisionContext) -> Result<BesselZetaEval, EvalError> {
    let x = x.into();
    check_args("bessel_zeta_real", mu, &x)?;
    bessel_zeta_mp(mu, &x.0, ctx.mp(), ctx.target_bits(), ctx.max_terms())
}

/// `ζ_μ(x) = Σ_n j_{μ,n}^-x` for `μ > -1`, `x > 1`, relative error at most the
/// context tolerance.
pub fn bessel_zeta_real(mu: f64, x: impl Into<Real>, ctx: &PrecisionContext) -> Result<Real, EvalError> {
    bessel_zeta_with_info(mu, x, ctx).map(|e| e.value)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{parse_rational, rayleigh_sigma};
    use crate::real::zero_table;

    fn ctx() -> PrecisionContext {
        PrecisionContext::new(160, 1e-30, 10_000).unwrap()
    }

    #[test]
    fn even_arguments_match_rayleigh() {
        use rayon::prelude::*;
        let c = ctx();
        ["0", "1/2", "1", "2"].par_iter().for_each(|mu| {
            let q = parse_rational(mu).unwrap();
            let muf = crate::real::mp::to_f64(&Mp::new(64).rat(&q));
            for n in 1..=8usize {
                let exact = Real::from_rational(&rayleigh_sigma(&q, n).unwrap(), 256);
                let got = bessel_zeta_real(muf, 2.0 * n as f64, &c).unwrap();
                let rel = got.rel_diff(&exact);
                assert!(rel < 10.0 * c.tolerance(), "mu = {mu}, n = {n}: {rel:e}");
            }
        });
    }

    #[test]
    fn reference_values() {
        let c = PrecisionContext::new(128, 1e-20, 10_000).unwrap();
        assert!((bessel_zeta_real(1.0, 2.0, &c).unwrap().to_f64() - 0.125).abs() < 1e-18);
        assert!((bessel_zeta_real(0.0, 4.0, &c).unwrap().to_f64() - 1.0 / 32.0).abs() < 1e-18);
        assert!((bessel_zeta_real(0.0, 2.0, &c).unwrap().to_f64() - 0.25).abs() < 1e-18);
    }

    #[test]
    fn half_order_is_scaled_riemann_zeta() {
        // j_{1/2,n} = nπ, so ζ_{1/2}(x) = ζ(x) / π^x
        let c = ctx();
        for x in [1.5, 2.5, 3.0, 7.25] {
            let got = bessel_zeta_real(0.5, x, &c).unwrap().to_f64();
            let z = crate::real::riemann_zeta_real(x, &c).unwrap().to_f64();
            let expected = z / std::f64::consts::PI.powf(x);
            assert!((got - expected).abs() < 1e-14 * expected, "x = {x}");
        }
    }

    #[test]
    fn large_argument_uses_majorant() {
        let e = bessel_zeta_with_info(1.0, 245.0, &ctx()).unwrap();
        assert_eq!(e.tail, TailMethod::Majorant);
        let e = bessel_zeta_with_info(1.0, 2.0, &ctx()).unwrap();
        assert_eq!(e.tail, TailMethod::Asymptotic);
    }

    /// The majorant tail contract against the true tail: with the exact
    /// `ζ_μ(2) = 1/(4(μ+1))`, `exact - Σ_{n≤K} j^-2` must sit below the
    /// majorant for every `K`, and every computed spacing must respect the
    /// slack.
    #[test]
    fn spacing_slack_validated_by_long_summation() {
        let c = PrecisionContext::new(128, 1e-20, 10_000).unwrap();
        for mu in [-0.95, -0.75, -0.5, -0.25, 0.0, 0.25, 0.5, 1.0, 2.0, 5.0] {
            let table = zero_table(mu, 150, &c).unwrap();
            let spacing = std::f64::consts::PI * (1.0 - slack(mu));
            let z: Vec<f64> = table.zeros.iter().map(Real::to_f64).collect();
            for w in z.windows(2) {
                assert!(w[1] - w[0] >= spacing, "mu = {mu}");
            }
            let exact = 1.0 / (4.0 * (mu + 1.0));
            let mut head = 0.0;
            for (i, j) in z.iter().enumerate() {
                head += j.powi(-2);
                let tail = exact - head;
                let bound = tail_majorant(mu, 2.0, &table.zeros[i], 128).to_f64();
                assert!(tail <= bound, "mu = {mu}, K = {}", i + 1);
            }
        }
    }

    #[test]
    fn rejects_bad_arguments() {
        assert!(bessel_zeta_real(-1.0, 2.0, &ctx()).is_err());
        assert!(bessel_zeta_real(0.0, 1.0, &ctx()).is_err());
    }
}
