//! Exact and controlled-precision tools for studying the log-behavior of
//! combinatorial sequences tied to the Riemann zeta function, the Bessel
//! zeta functions and Dobinski's formula.
//!
//! The crate is split into four layers:
//!
//! * [`exact`]: big-rational generators for Bernoulli, Bell, Catalan,
//!   Narayana and Lasalle numbers and for the Rayleigh sums `ζ_μ(2n)`.
//! * [`real`]: multi-precision evaluation of `ln Γ`, `ζ(x)`, `J_μ`, its zeros,
//!   `ζ_μ(x)`, `θ(x)`, `θ_μ(x)` and the Dobinski function `B(x)`.
//! * [`logcheck`]: exact and numerical checkers producing [`logcheck::PropertyReport`]s.
//! * [`cli`]: the `logbehave` command-line front end.

pub mod cli;
pub mod exact;
pub mod logcheck;
pub mod real;

pub use num_rational::BigRational;
