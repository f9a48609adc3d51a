use std::fmt;
use std::str::FromStr;

use super::mp::Mp;
use super::{
    bell_real, bell_root, bessel_j, bessel_zeta_real, domain, ln_bell_real, ln_gamma, riemann_zeta_real, theta,
    theta_mu, EvalError, PrecisionContext, Real,
};

/// A real function that can be evaluated under a precision context. Must be
/// callable from several threads at once.
pub trait RealFunction: Sync {
    fn name(&self) -> String;

    fn eval(&self, x: &Real, ctx: &PrecisionContext) -> Result<Real, EvalError>;

    /// `ln f(x)`; requires `f(x) > 0`.
    fn ln_eval(&self, x: &Real, ctx: &PrecisionContext) -> Result<Real, EvalError> {
        let v = self.eval(x, ctx)?;
        if !v.is_positive() {
            return Err(domain("ln_eval", "f(x) > 0", &v));
        }
        let m = Mp::new(v.precision().max(ctx.mp().p));
        Ok(Real(m.ln(&v.0)))
    }
}

impl<F> RealFunction for F
where
    F: Fn(&Real, &PrecisionContext) -> Result<Real, EvalError> + Sync,
{
    fn name(&self) -> String {
        "closure".into()
    }

    fn eval(&self, x: &Real, ctx: &PrecisionContext) -> Result<Real, EvalError> {
        self(x, ctx)
    }
}

/// The named functions of this crate as first-class values.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Function {
    Zeta,
    Theta,
    ThetaMu(f64),
    BesselZeta(f64),
    BesselJ(f64),
    Bell,
    BellRoot,
    LnGamma,
    Exp,
}

impl Function {
    pub const NAMES: [&'static str; 9] = [
        "zeta",
        "theta",
        "theta_mu",
        "bessel_zeta",
        "bessel_j",
        "bell",
        "bell_root",
        "ln_gamma",
        "exp",
    ];

    pub fn base_name(&self) -> &'static str {
        match self {
            Function::Zeta => "zeta",
            Function::Theta => "theta",
            Function::ThetaMu(_) => "theta_mu",
            Function::BesselZeta(_) => "bessel_zeta",
            Function::BesselJ(_) => "bessel_j",
            Function::Bell => "bell",
            Function::BellRoot => "bell_root",
            Function::LnGamma => "ln_gamma",
            Function::Exp => "exp",
        }
    }

    pub fn mu(&self) -> Option<f64> {
        match *self {
            Function::ThetaMu(mu) | Function::BesselZeta(mu) | Function::BesselJ(mu) => Some(mu),
            _ => None,
        }
    }

    pub fn needs_mu(name: &str) -> bool {
        matches!(name, "theta_mu" | "bessel_zeta" | "bessel_j")
    }

    /// Look up by name, attaching `mu` for the order-dependent functions.
    pub fn from_name(name: &str, mu: Option<f64>) -> Result<Function, String> {
        let need = |f: fn(f64) -> Function| mu.map(f).ok_or_else(|| format!("function {name} requires --mu"));
        match name {
            "zeta" => Ok(Function::Zeta),
            "theta" => Ok(Function::Theta),
            "theta_mu" => need(Function::ThetaMu),
            "bessel_zeta" => need(Function::BesselZeta),
            "bessel_j" => need(Function::BesselJ),
            "bell" => Ok(Function::Bell),
            "bell_root" => Ok(Function::BellRoot),
            "ln_gamma" => Ok(Function::LnGamma),
            "exp" => Ok(Function::Exp),
            _ => Err(format!(
                "unknown function {name:?}; expected one of {}",
                Function::NAMES.join(", ")
            )),
        }
    }
}

impl FromStr for Function {
    type Err = String;

    /// Parses `name` or `name(mu=value)`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.split_once("(mu=") {
            Some((name, rest)) => {
                let v = rest
                    .strip_suffix(')')
                    .ok_or_else(|| format!("malformed function {s:?}"))?;
                let mu = v.parse::<f64>().map_err(|e| format!("bad mu in {s:?}: {e}"))?;
                Function::from_name(name, Some(mu))
            }
            None => Function::from_name(s, None),
        }
    }
}

impl fmt::Display for Function {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.mu() {
            Some(mu) => write!(f, "{}(mu={mu})", self.base_name()),
            None => f.write_str(self.base_name()),
        }
    }
}

impl RealFunction for Function {
    fn name(&self) -> String {
        self.to_string()
    }

    fn eval(&self, x: &Real, ctx: &PrecisionContext) -> Result<Real, EvalError> {
        match *self {
            Function::Zeta => riemann_zeta_real(x, ctx),
            Function::Theta => theta(x, ctx),
            Function::ThetaMu(mu) => theta_mu(mu, x, ctx),
            Function::BesselZeta(mu) => bessel_zeta_real(mu, x, ctx),
            Function::BesselJ(mu) => bessel_j(mu, x, ctx),
            Function::Bell => bell_real(x, ctx),
            Function::BellRoot => bell_root(x, ctx),
            Function::LnGamma => ln_gamma(x, ctx),
            Function::Exp => {
                let m = ctx.mp();
                Ok(Real(m.exp(&x.0)))
            }
        }
    }

    fn ln_eval(&self, x: &Real, ctx: &PrecisionContext) -> Result<Real, EvalError> {
        match *self {
            Function::Exp => Ok(x.clone()),
            Function::Bell => ln_bell_real(x, ctx),
            Function::BellRoot => {
                let m = ctx.mp();
                Ok(Real(m.div(&ln_bell_real(x, ctx)?.0, &x.0)))
            }
            _ => {
                let v = self.eval(x, ctx)?;
                if !v.is_positive() {
                    return Err(domain("ln_eval", "f(x) > 0", &v));
                }
                let m = Mp::new(v.precision().max(ctx.mp().p));
                Ok(Real(m.ln(&v.0)))
            }
        }
    }
}
