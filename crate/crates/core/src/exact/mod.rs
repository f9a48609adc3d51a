//! Exact generators for every integer-indexed sequence handled by the crate.
//!
//! All values are [`BigRational`]s in canonical form. Generators that are
//! defined by a recurrence keep a per-process cache behind a mutex, so
//! repeated and concurrent calls are cheap and safe.

mod bell;
mod bernoulli;
mod lasalle;
mod rayleigh;
mod window;

use std::sync::{Mutex, MutexGuard, PoisonError};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub use bell::bell;
pub use bernoulli::{bernoulli, bernoulli_abs_even, bernoulli_abs_even_over_factorial, zeta_even_rational};
pub use lasalle::{catalan, lasalle_a, lasalle_big_a, narayana_poly, NarayanaPolynomial};
pub use rayleigh::{a_mu, b_seq, pochhammer_shifted, rayleigh_sigma};
pub use window::{window, Sequence, SequenceWindow};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExactError {
    #[error("mu must satisfy mu > -1, got {0}")]
    MuOutOfDomain(BigRational),
    #[error("unknown sequence `{0}`")]
    UnknownSequence(String),
    #[error("sequence `{0}` requires a value for mu")]
    MissingMu(&'static str),
    #[error("sequence `{sequence}` is not defined at index {index}")]
    IndexOutOfDomain { sequence: &'static str, index: usize },
    #[error("window length must be positive")]
    EmptyWindow,
    #[error("cannot parse `{0}` as a rational number")]
    BadRational(String),
}

pub(crate) fn lock<T>(m: &Mutex<T>) -> MutexGuard<'_, T> {
    m.lock().unwrap_or_else(PoisonError::into_inner)
}

/// Binomial coefficient `C(n, k)`, zero when `k > n`.
pub fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

pub fn factorial(n: u64) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, i| acc * i)
}

pub(crate) fn int(v: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(v.into())
}

pub(crate) fn check_mu(mu: &BigRational) -> Result<(), ExactError> {
    if *mu > -BigRational::one() {
        Ok(())
    } else {
        Err(ExactError::MuOutOfDomain(mu.clone()))
    }
}

/// True when the rational has denominator one.
pub fn is_integer_valued(q: &BigRational) -> bool {
    q.denom().is_one()
}

/// Renders a rational as `p/q`, or `p` when the denominator is one.
pub fn format_rational(q: &BigRational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses `p/q`, an integer, or a finite decimal such as `0.5` or `-1.25`
/// into an exact rational.
pub fn parse_rational(s: &str) -> Result<BigRational, ExactError> {
    let bad = || ExactError::BadRational(s.to_string());
    let t = s.trim();
    if let Some((p, q)) = t.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| bad())?;
        let q: BigInt = q.trim().parse().map_err(|_| bad())?;
        if q.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(p, q));
    }
    if let Some((whole, frac)) = t.split_once('.') {
        let negative = whole.starts_with('-');
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let whole_digits = whole.trim_start_matches(['-', '+']);
        let w: BigInt = if whole_digits.is_empty() {
            BigInt::zero()
        } else {
            whole_digits.parse().map_err(|_| bad())?
        };
        let f: BigInt = frac.parse().map_err(|_| bad())?;
        let scale = num_traits::pow(BigInt::from(10u32), frac.len());
        let mag = BigRational::new(w * &scale + f, scale);
        return Ok(if negative { -mag } else { mag });
    }
    let p: BigInt = t.parse().map_err(|_| bad())?;
    Ok(int(p))
}

pub(crate) fn abs(q: &BigRational) -> BigRational {
    q.abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomial_small_values() {
        assert_eq!(binomial(5, 2), BigInt::from(10));
        assert_eq!(binomial(10, 0), BigInt::from(1));
        assert_eq!(binomial(3, 4), BigInt::from(0));
        assert_eq!(binomial(40, 20), "137846528820".parse::<BigInt>().unwrap());
    }

    #[test]
    fn parse_rational_forms() {
        assert_eq!(parse_rational("1/2").unwrap(), BigRational::new(1.into(), 2.into()));
        assert_eq!(parse_rational("0.5").unwrap(), BigRational::new(1.into(), 2.into()));
        assert_eq!(
            parse_rational("-1.25").unwrap(),
            BigRational::new((-5).into(), 4.into())
        );
        assert_eq!(parse_rational("-0.5").unwrap(), BigRational::new((-1).into(), 2.into()));
        assert_eq!(parse_rational("3").unwrap(), int(3));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("1.").is_err());
    }

    #[test]
    fn rational_formatting() {
        assert_eq!(format_rational(&BigRational::new((-1).into(), 30.into())), "-1/30");
        assert_eq!(format_rational(&int(52)), "52");
    }
}
