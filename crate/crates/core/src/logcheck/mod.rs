//! Property checkers. Exact checks compare big rationals by cross
//! multiplication; numerical scans work at a [`PrecisionContext`] and mark
//! comparisons closer than the tolerance band as inconclusive.
//!
//! [`PrecisionContext`]: crate::real::PrecisionContext

mod exact;
mod numeric;
mod report;
mod suites;

use thiserror::Error;

use crate::exact::ExactError;
use crate::real::EvalError;

pub use exact::{
    check_identity_exact, check_log_concave_exact, check_log_convex_exact, check_nth_root_increasing_exact, root_less,
};
pub use numeric::{
    check_first_zero_bound, check_gamma_bound, holder_compare, random_pairs, scan_conjectures, scan_log_curvature,
    scan_monotone, verify_holder, Curvature, RealGrid, MAX_GRID_POINTS,
};
pub use report::{Counterexample, Method, Property, PropertyReport, Range, Verdict};
pub use suites::{
    root_threshold, stated_root_threshold, verify_a_mu_suite, verify_b_suite, verify_bell_suite, verify_bernoulli_suite,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CheckError {
    #[error("{subject}: need at least {need} values, got {got}")]
    WindowTooShort { subject: String, need: usize, got: usize },
    #[error("{subject}: value at index {index} is not positive")]
    NonPositive { subject: String, index: usize },
    #[error("window mismatch: {0}")]
    Mismatch(String),
    #[error("invalid grid: {0}")]
    BadGrid(String),
    #[error("domain violation: {0}")]
    Domain(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error(transparent)]
    Eval(#[from] EvalError),
}
