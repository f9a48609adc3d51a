//! Controlled-precision real evaluation.
//!
//! Every entry point takes a [`PrecisionContext`]. Values are carried as
//! multi-precision [`Real`]s; the context's tolerance is the error contract
//! of the returned value (absolute or relative, as documented per function).

mod bessel;
mod bessel_zeta;
mod diff;
mod dobinski;
mod function;
mod gamma;
pub(crate) mod mp;
mod theta;
mod zeros;
mod zeta;

use std::cmp::Ordering;
use std::fmt;

use astro_float::BigFloat;
use num_rational::BigRational;
use thiserror::Error;

use mp::Mp;

pub use bessel::bessel_j;
pub use bessel_zeta::{
    bessel_zeta_real, bessel_zeta_with_info, tail_majorant, BesselZetaEval, TailMethod, SPACING_SLACK_NEGATIVE_MU,
    SPACING_SLACK_NONNEGATIVE_MU,
};
pub use diff::log_second_difference;
pub(crate) use diff::log_second_difference_scaled;
pub use dobinski::{bell_real, bell_root, ln_bell_real};
pub use function::{Function, RealFunction};
pub use gamma::{gamma_lower_bound_holds, ln_gamma, stirling_lower_bound_as_printed_holds};
pub use theta::{theta, theta_mu};
pub use zeros::{bessel_zero, first_zero_upper_bound, mcmahon_guess, zero_table, ZeroTable};
pub use zeta::{hurwitz_zeta, riemann_zeta_real};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EvalError {
    #[error("{function}: domain violation, requires {requirement} (got {got})")]
    Domain {
        function: &'static str,
        requirement: &'static str,
        got: String,
    },
    #[error("{function}: series did not reach the tolerance within {max_terms} terms")]
    PrecisionExhausted { function: &'static str, max_terms: usize },
    #[error("bessel_zero: could not bracket zero {k} of J_{mu}")]
    BracketFailure { mu: f64, k: usize },
    #[error("bessel_zeta: tail bound for mu = {mu}, x = {x} did not reach the tolerance within {zeros} zeros")]
    TailNotConverged { mu: f64, x: f64, zeros: usize },
    #[error("invalid precision context: {0}")]
    InvalidContext(String),
    #[error("{0}: numerical failure (NaN)")]
    Numerical(&'static str),
}

pub(crate) fn domain(function: &'static str, requirement: &'static str, got: impl fmt::Display) -> EvalError {
    EvalError::Domain {
        function,
        requirement,
        got: got.to_string(),
    }
}

/// Working precision, target tolerance and a safety cap on series lengths.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrecisionContext {
    working_precision: usize,
    tolerance: f64,
    max_terms: usize,
}

impl PrecisionContext {
    pub const MIN_PRECISION: usize = 64;

    pub fn new(working_precision: usize, tolerance: f64, max_terms: usize) -> Result<Self, EvalError> {
        if working_precision < Self::MIN_PRECISION {
            return Err(EvalError::InvalidContext(format!(
                "working precision must be at least {} bits, got {working_precision}",
                Self::MIN_PRECISION
            )));
        }
        if !(tolerance > 0.0 && tolerance.is_finite()) {
            return Err(EvalError::InvalidContext(format!(
                "tolerance must be positive, got {tolerance}"
            )));
        }
        if max_terms == 0 {
            return Err(EvalError::InvalidContext("max_terms must be at least 1".into()));
        }
        // leave 8 bits of headroom below the working precision
        let floor = (-((working_precision - 8) as f64)).exp2();
        if tolerance < floor {
            return Err(EvalError::InvalidContext(format!(
                "tolerance {tolerance:e} is not representable at {working_precision} bits (minimum {floor:e})"
            )));
        }
        Ok(PrecisionContext {
            working_precision,
            tolerance,
            max_terms,
        })
    }

    pub fn working_precision(&self) -> usize {
        self.working_precision
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    pub fn max_terms(&self) -> usize {
        self.max_terms
    }

    /// Same precision and cap, different tolerance.
    pub fn with_tolerance(&self, tolerance: f64) -> Result<Self, EvalError> {
        Self::new(self.working_precision, tolerance, self.max_terms)
    }

    /// `ceil(-log2(tolerance))`.
    pub fn tolerance_bits(&self) -> usize {
        (-self.tolerance.log2()).ceil().max(1.0) as usize
    }

    pub(crate) fn target_bits(&self) -> usize {
        self.tolerance_bits() + 8
    }

    pub(crate) fn mp(&self) -> Mp {
        Mp::new(self.working_precision.max(self.target_bits() + 16) + 32)
    }
}

impl Default for PrecisionContext {
    /// 256 bits, relative tolerance `1e-30`.
    fn default() -> Self {
        PrecisionContext {
            working_precision: 256,
            tolerance: 1e-30,
            max_terms: 100_000,
        }
    }
}

/// A multi-precision real value.
#[derive(Clone, Debug)]
pub struct Real(pub(crate) BigFloat);

impl Real {
    pub fn from_rational(q: &BigRational, bits: usize) -> Self {
        Real(Mp::new(bits).rat(q))
    }

    pub fn to_f64(&self) -> f64 {
        mp::to_f64(&self.0)
    }

    /// Approximate `log2 |self|`, finite even when the value overflows `f64`.
    pub fn log2_abs(&self) -> f64 {
        mp::log2_abs(&self.0)
    }

    pub fn is_positive(&self) -> bool {
        mp::is_pos(&self.0)
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative() && !self.0.is_zero()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    /// Rounded decimal rendering with `digits` significant digits.
    pub fn to_string_digits(&self, digits: usize) -> String {
        mp::format_sig(&self.0, digits)
    }

    pub fn precision(&self) -> usize {
        self.0.precision().unwrap_or(0)
    }

    pub fn sub(&self, other: &Real, bits: usize) -> Real {
        Real(Mp::new(bits).sub(&self.0, &other.0))
    }

    /// `|self - other| / |other|`.
    pub fn rel_diff(&self, other: &Real) -> f64 {
        let m = Mp::new(self.precision().max(other.precision()).max(64) + 16);
        let d = m.sub(&self.0, &other.0);
        if d.is_zero() {
            return 0.0;
        }
        (mp::log2_abs(&d) - mp::log2_abs(&other.0)).exp2()
    }

    pub fn abs_diff(&self, other: &Real) -> f64 {
        let m = Mp::new(self.precision().max(other.precision()).max(64) + 16);
        let d = m.sub(&self.0, &other.0);
        if d.is_zero() {
            0.0
        } else {
            mp::log2_abs(&d).exp2()
        }
    }
}

impl From<f64> for Real {
    fn from(v: f64) -> Self {
        Real(BigFloat::from_f64(v, 64))
    }
}

impl From<i32> for Real {
    fn from(v: i32) -> Self {
        Real(BigFloat::from_i64(v as i64, 64))
    }
}

impl From<&Real> for Real {
    fn from(v: &Real) -> Self {
        v.clone()
    }
}

impl PartialEq for Real {
    fn eq(&self, other: &Self) -> bool {
        self.partial_cmp(other) == Some(Ordering::Equal)
    }
}

impl PartialOrd for Real {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.0.cmp(&other.0).map(|c| c.cmp(&0))
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f
            .precision()
            .unwrap_or(((self.precision() as f64) * std::f64::consts::LOG10_2) as usize);
        f.write_str(&self.to_string_digits(digits))
    }
}

pub(crate) fn check_nan(v: BigFloat, function: &'static str) -> Result<BigFloat, EvalError> {
    if v.is_nan() {
        Err(EvalError::Numerical(function))
    } else {
        Ok(v)
    }
}
