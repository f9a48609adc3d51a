use std::sync::Mutex;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{abs, factorial, lock};

static CACHE: Mutex<Vec<BigRational>> = Mutex::new(Vec::new());

/// The Bernoulli number `B_n` with the convention `B_1 = -1/2`.
///
/// Generated from `Σ_{k=0}^{n} C(n+1, k) B_k = 0` and cached for the
/// lifetime of the process.
pub fn bernoulli(n: usize) -> BigRational {
    let mut cache = lock(&CACHE);
    extend(&mut cache, n);
    cache[n].clone()
}

fn extend(cache: &mut Vec<BigRational>, n: usize) {
    if cache.is_empty() {
        cache.push(BigRational::one());
    }
    while cache.len() <= n {
        let m = cache.len();
        if m >= 3 && m % 2 == 1 {
            cache.push(BigRational::zero());
            continue;
        }
        // Accumulate over the running common denominator; B_k denominators
        // are squarefree and tiny compared to the numerators.
        let mut num = BigInt::zero();
        let mut den = BigInt::one();
        let mut binom = BigInt::one();
        for (k, b) in cache.iter().enumerate() {
            if !b.is_zero() {
                let bd = b.denom();
                let g = num_integer::Integer::gcd(&den, bd);
                let scale = bd / &g;
                num = num * &scale + b.numer() * &binom * (&den / &g);
                den *= scale;
            }
            binom = binom * (m + 1 - k) / (k + 1);
        }
        cache.push(BigRational::new(-num, den * (m + 1)));
    }
}

/// `|B_{2n}|`, indexed by `n ≥ 1`.
pub fn bernoulli_abs_even(n: usize) -> BigRational {
    abs(&bernoulli(2 * n))
}

/// `|B_{2n}| / (2n)!`, indexed by `n ≥ 1`.
pub fn bernoulli_abs_even_over_factorial(n: usize) -> BigRational {
    bernoulli_abs_even(n) / BigRational::from_integer(factorial(2 * n as u64))
}

/// The rational `c_n` with `ζ(2n) = c_n π^{2n}`, i.e. `2^{2n-1} |B_{2n}| / (2n)!`.
pub fn zeta_even_rational(n: usize) -> BigRational {
    assert!(n >= 1, "zeta_even_rational is defined for n >= 1");
    let pow2 = BigInt::one() << (2 * n - 1);
    bernoulli_abs_even_over_factorial(n) * BigRational::from_integer(pow2)
}
