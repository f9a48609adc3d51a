use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use astro_float::BigFloat;

use super::bessel::BesselSeries;
use super::mp::{abs, log2_abs, to_f64, Mp};
use super::{domain, EvalError, PrecisionContext, Real};
use crate::exact::lock;

/// Scan step when bracketing zeros. Consecutive positive zeros of `J_μ`,
/// `μ > -1`, are more than 2.9 apart, so a step of 2.5 never jumps over two.
const SCAN_STEP: f64 = 2.5;
const MAX_SCAN_STEPS: usize = 10_000;
const MAX_REFINE_STEPS: usize = 400;

/// Certified positive zeros `j_{μ,1} < ... < j_{μ,K}` of `J_μ`.
#[derive(Debug, Clone)]
pub struct ZeroTable {
    pub mu: f64,
    pub zeros: Vec<Real>,
    /// Largest `|J_μ(j)|` over the stored approximations.
    pub residual_bound: Real,
}

impl ZeroTable {
    pub fn len(&self) -> usize {
        self.zeros.len()
    }

    pub fn is_empty(&self) -> bool {
        self.zeros.is_empty()
    }

    /// The `k`-th zero, counting from 1.
    pub fn get(&self, k: usize) -> Option<&Real> {
        k.checked_sub(1).and_then(|i| self.zeros.get(i))
    }

    pub fn is_strictly_increasing(&self) -> bool {
        self.zeros.first().is_some_and(Real::is_positive) && self.zeros.windows(2).all(|w| w[0] < w[1])
    }
}

/// McMahon's leading approximation `β - (4μ² - 1) / (8β)`,
/// `β = (k + μ/2 - 1/4) π`.
pub fn mcmahon_guess(mu: f64, k: usize) -> f64 {
    let beta = (k as f64 + mu / 2.0 - 0.25) * std::f64::consts::PI;
    beta - (4.0 * mu * mu - 1.0) / (8.0 * beta)
}

/// `sqrt(μ+1) (sqrt(μ+2) + 1)`, an upper bound for `j_{μ,1}` when `μ > -1`.
pub fn first_zero_upper_bound(mu: f64) -> f64 {
    (mu + 1.0).sqrt() * ((mu + 2.0).sqrt() + 1.0)
}

struct ZeroEntry {
    series: BesselSeries,
    zeros: Vec<BigFloat>,
    residual: BigFloat,
    m: Mp,
    bits: usize,
}

type ZeroCache = Mutex<Option<HashMap<(u64, usize), Arc<Mutex<ZeroEntry>>>>>;

static ZEROS: ZeroCache = Mutex::new(None);

fn sign(v: &BigFloat) -> i32 {
    if v.is_zero() {
        0
    } else if v.is_negative() {
        -1
    } else {
        1
    }
}

impl ZeroEntry {
    fn new(mu: f64, bits: usize, max_terms: usize) -> Result<Self, EvalError> {
        let m = Mp::new(bits + 40);
        let series = BesselSeries::new(mu, m, bits + 12, max_terms)?;
        Ok(ZeroEntry {
            series,
            zeros: Vec::new(),
            residual: BigFloat::new(m.p),
            m,
            bits,
        })
    }

    fn j(&self, x: &BigFloat) -> Result<BigFloat, EvalError> {
        Ok(self.series.eval_fast(x)?.j)
    }

    fn extend_to(&mut self, count: usize, mu: f64) -> Result<(), EvalError> {
        while self.zeros.len() < count {
            let k = self.zeros.len() + 1;
            let z = self.next_zero(mu, k)?;
            let r = abs(&self.j(&z)?);
            if r.cmp(&self.residual).is_some_and(|c| c > 0) {
                self.residual = r;
            }
            self.zeros.push(z);
        }
        Ok(())
    }

    /// Locate zero `k` given zeros `1..k-1`. `J_μ` has sign `(-1)^{k-1}` just
    /// left of `j_{μ,k}`; the scan starts either at `2 sqrt(μ+1)`, below the
    /// first zero because `Σ j^-2 = 1/(4(μ+1))`, or just past the previous
    /// zero.
    fn next_zero(&self, mu: f64, k: usize) -> Result<BigFloat, EvalError> {
        let m = self.m;
        let fail = || EvalError::BracketFailure { mu, k };
        let expected = if k % 2 == 1 { 1 } else { -1 };
        let mut a = match self.zeros.last() {
            None => m.f(2.0 * (mu + 1.0).sqrt()),
            Some(prev) => m.add(prev, &m.f(0.5)),
        };
        if sign(&self.j(&a)?) != expected {
            return Err(fail());
        }
        let step = m.f(SCAN_STEP);
        let mut b = m.add(&a, &step);
        let mut found = false;
        for _ in 0..MAX_SCAN_STEPS {
            if sign(&self.j(&b)?) != expected {
                found = true;
                break;
            }
            a = b;
            b = m.add(&a, &step);
        }
        if !found {
            return Err(fail());
        }
        let (mut lo, mut hi) = (a, b);
        let guess = mcmahon_guess(mu, k);
        let mut x = if guess > to_f64(&lo) && guess < to_f64(&hi) {
            m.f(guess)
        } else {
            m.mul(&m.add(&lo, &hi), &m.f(0.5))
        };
        let stop = -((self.bits + 2) as f64);
        for _ in 0..MAX_REFINE_STEPS {
            let v = self.series.eval_fast(&x)?;
            match sign(&v.j) {
                0 => return Ok(x),
                s if s == expected => lo = x.clone(),
                _ => hi = x.clone(),
            }
            if !v.dj.is_zero() {
                let step = m.div(&v.j, &v.dj);
                if log2_abs(&step) < stop {
                    break;
                }
                let newton = m.sub(&x, &step);
                if newton.cmp(&lo).is_some_and(|c| c > 0) && newton.cmp(&hi).is_some_and(|c| c < 0) {
                    x = newton;
                    continue;
                }
            }
            x = m.mul(&m.add(&lo, &hi), &m.f(0.5));
            if log2_abs(&m.sub(&hi, &lo)) < stop {
                break;
            }
        }
        if self.certified(&x, expected)? {
            return Ok(x);
        }
        // Newton settled outside the certification window; plain bisection
        for _ in 0..MAX_REFINE_STEPS {
            let mid = m.mul(&m.add(&lo, &hi), &m.f(0.5));
            if log2_abs(&m.sub(&hi, &lo)) < stop {
                if self.certified(&mid, expected)? {
                    return Ok(mid);
                }
                break;
            }
            if sign(&self.j(&mid)?) == expected {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        Err(fail())
    }

    /// Sign change of `J_μ` across `[x - ε, x + ε]`, `ε = 2^-bits`.
    fn certified(&self, x: &BigFloat, expected: i32) -> Result<bool, EvalError> {
        let m = self.m;
        let eps = m.powi(&m.f(0.5), self.bits);
        let left = sign(&self.j(&m.sub(x, &eps))?);
        let right = sign(&self.j(&m.add(x, &eps))?);
        Ok(left == expected && right == -expected)
    }
}

/// First `count` zeros with absolute error below `2^-bits`, plus the residual
/// bound. Results are cached per `(μ, accuracy)`; the accuracy is rounded up
/// to a multiple of 16 bits so nearby requests share work.
pub(crate) fn zeros_mp(
    mu: f64,
    count: usize,
    bits: usize,
    max_terms: usize,
) -> Result<(Vec<BigFloat>, BigFloat), EvalError> {
    let bits = bits.div_ceil(16) * 16;
    let entry = {
        let mut guard = lock(&ZEROS);
        let map = guard.get_or_insert_with(HashMap::new);
        match map.get(&(mu.to_bits(), bits)) {
            Some(e) => e.clone(),
            None => {
                let e = Arc::new(Mutex::new(ZeroEntry::new(mu, bits, max_terms)?));
                map.insert((mu.to_bits(), bits), e.clone());
                e
            }
        }
    };
    let mut e = lock(&entry);
    e.extend_to(count, mu)?;
    Ok((e.zeros[..count].to_vec(), e.residual.clone()))
}

fn check_mu(function: &'static str, mu: f64) -> Result<(), EvalError> {
    if mu > -1.0 && mu.is_finite() {
        Ok(())
    } else {
        Err(domain(function, "mu > -1", mu))
    }
}

/// `j_{μ,k}` with absolute error at most the context tolerance. The returned
/// value is certified by a sign change of `J_μ` within half the tolerance on
/// either side.
pub fn bessel_zero(mu: f64, k: usize, ctx: &PrecisionContext) -> Result<Real, EvalError> {
    check_mu("bessel_zero", mu)?;
    if k == 0 {
        return Err(domain("bessel_zero", "k >= 1", k));
    }
    let (zeros, _) = zeros_mp(mu, k, ctx.tolerance_bits() + 2, ctx.max_terms())?;
    Ok(Real(zeros[k - 1].clone()))
}

/// The first `count` zeros of `J_μ`.
pub fn zero_table(mu: f64, count: usize, ctx: &PrecisionContext) -> Result<ZeroTable, EvalError> {
    check_mu("zero_table", mu)?;
    let (zeros, residual) = zeros_mp(mu, count, ctx.tolerance_bits() + 2, ctx.max_terms())?;
    Ok(ZeroTable {
        mu,
        zeros: zeros.into_iter().map(Real).collect(),
        residual_bound: Real(residual),
    })
}
