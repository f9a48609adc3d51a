use std::sync::Mutex;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::lock;

static CACHE: Mutex<Vec<BigInt>> = Mutex::new(Vec::new());

/// The Bell number `B_n`, via `B_{n+1} = Σ_{k=0}^{n} C(n, k) B_k`.
pub fn bell(n: usize) -> BigRational {
    let mut cache = lock(&CACHE);
    if cache.is_empty() {
        cache.push(BigInt::one());
    }
    while cache.len() <= n {
        let m = cache.len() - 1;
        let mut binom = BigInt::one();
        let mut next = BigInt::zero();
        for (k, b) in cache.iter().enumerate() {
            next += &binom * b;
            binom = binom * (m - k) / (k + 1);
        }
        cache.push(next);
    }
    BigRational::from_integer(cache[n].clone())
}
