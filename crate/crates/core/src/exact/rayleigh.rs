use std::collections::HashMap;
use std::sync::Mutex;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{check_mu, factorial, int, lock, ExactError};

type SigmaCache = HashMap<BigRational, Vec<BigRational>>;

static SIGMA: Mutex<Option<SigmaCache>> = Mutex::new(None);

/// The Rayleigh sum `σ_{2n}(μ) = ζ_μ(2n) = Σ_k j_{μ,k}^{-2n}`.
///
/// Computed from `σ_2 = 1/(4(μ+1))` and
/// `σ_{2n} = (1/(n+μ)) Σ_{k=1}^{n-1} σ_{2k} σ_{2(n-k)}`.
pub fn rayleigh_sigma(mu: &BigRational, n: usize) -> Result<BigRational, ExactError> {
    check_mu(mu)?;
    if n == 0 {
        return Err(ExactError::IndexOutOfDomain {
            sequence: "rayleigh_sigma",
            index: 0,
        });
    }
    let mut guard = lock(&SIGMA);
    let cache = guard.get_or_insert_with(HashMap::new);
    let sigmas = cache.entry(mu.clone()).or_default();
    if sigmas.is_empty() {
        sigmas.push((int(4) * (mu + BigRational::one())).recip());
    }
    while sigmas.len() < n {
        let m = sigmas.len() + 1;
        // sigmas[i] = σ_{2(i+1)}; the convolution is symmetric, so sum half.
        let mut acc = BigRational::zero();
        for k in 1..=(m - 1) / 2 {
            acc += &sigmas[k - 1] * &sigmas[m - k - 1];
        }
        acc *= int(2);
        if m % 2 == 0 {
            let half = &sigmas[m / 2 - 1];
            acc += half * half;
        }
        sigmas.push(acc / (int(m as i64) + mu));
    }
    Ok(sigmas[n - 1].clone())
}

/// `(μ+1)_n = (μ+1)(μ+2)···(μ+n)`; the empty product for `n = 0`.
pub fn pochhammer_shifted(mu: &BigRational, n: usize) -> BigRational {
    (1..=n).fold(BigRational::one(), |acc, i| acc * (mu + int(i as i64)))
}

/// `a_n(μ) = 2^{2n+1} (n-1)! (μ+1)_n ζ_μ(2n)`.
pub fn a_mu(mu: &BigRational, n: usize) -> Result<BigRational, ExactError> {
    if n == 0 {
        return Err(ExactError::IndexOutOfDomain {
            sequence: "a_mu",
            index: 0,
        });
    }
    let sigma = rayleigh_sigma(mu, n)?;
    let scale = BigRational::from_integer((BigInt::one() << (2 * n + 1)) * factorial(n as u64 - 1));
    Ok(scale * pochhammer_shifted(mu, n) * sigma)
}

/// `b_n = a_n(0) / 2`, the Carlitz sequence.
pub fn b_seq(n: usize) -> Result<BigRational, ExactError> {
    Ok(a_mu(&BigRational::zero(), n)? / int(2))
}
