use std::sync::Mutex;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use super::{binomial, lock};

/// The Catalan number `C_n = C(2n, n) / (n + 1)`.
pub fn catalan(n: usize) -> BigRational {
    BigRational::from_integer(catalan_int(n as u64))
}

fn catalan_int(n: u64) -> BigInt {
    binomial(2 * n, n) / (n + 1)
}

/// The Narayana polynomial `N_r(z) = Σ_{k=1}^{r} (1/r) C(r, k-1) C(r, k) z^k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NarayanaPolynomial {
    pub r: usize,
    /// `coefficients[k - 1]` is the coefficient of `z^k`.
    pub coefficients: Vec<BigRational>,
}

impl NarayanaPolynomial {
    pub fn coefficient(&self, k: usize) -> BigRational {
        if k == 0 || k > self.r {
            BigRational::zero()
        } else {
            self.coefficients[k - 1].clone()
        }
    }

    pub fn eval(&self, z: &BigRational) -> BigRational {
        // Horner from the top; the constant term is zero.
        let mut acc = BigRational::zero();
        for c in self.coefficients.iter().rev() {
            acc = (acc + c) * z;
        }
        acc
    }
}

pub fn narayana_poly(r: usize) -> NarayanaPolynomial {
    assert!(r >= 1, "Narayana polynomials are indexed from r = 1");
    let ru = r as u64;
    let coefficients = (1..=ru)
        .map(|k| BigRational::new(binomial(ru, k - 1) * binomial(ru, k), BigInt::from(ru)))
        .collect();
    NarayanaPolynomial { r, coefficients }
}

static LASALLE: Mutex<Vec<BigInt>> = Mutex::new(Vec::new());

/// Lasalle's number `A_n` from
/// `(-1)^{n-1} A_n = C_n + Σ_{j=1}^{n-1} (-1)^j C(2n-1, 2j-1) A_j C_{n-j}`.
pub fn lasalle_big_a(n: usize) -> BigRational {
    assert!(n >= 1, "A_n is indexed from n = 1");
    let mut cache = lock(&LASALLE);
    // cache[i] holds A_{i+1}
    while cache.len() < n {
        let m = cache.len() + 1;
        let mu = m as u64;
        let mut rhs = catalan_int(mu);
        for (idx, a_j) in cache.iter().enumerate() {
            let j = idx as u64 + 1;
            let term = binomial(2 * mu - 1, 2 * j - 1) * a_j * catalan_int(mu - j);
            if j % 2 == 1 {
                rhs -= term;
            } else {
                rhs += term;
            }
        }
        cache.push(if m % 2 == 1 { rhs } else { -rhs });
    }
    BigRational::from_integer(cache[n - 1].clone())
}

/// `a_n = 2 A_n / C_n`.
pub fn lasalle_a(n: usize) -> BigRational {
    lasalle_big_a(n) * BigRational::from_integer(BigInt::from(2)) / catalan(n)
}
