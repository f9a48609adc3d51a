use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::Zero;

use super::{
    a_mu, b_seq, bell, bernoulli, bernoulli_abs_even, bernoulli_abs_even_over_factorial, catalan, lasalle_a,
    lasalle_big_a, rayleigh_sigma, zeta_even_rational, ExactError,
};

/// Scalar-valued exact sequences that can be materialized as a window.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sequence {
    Bernoulli,
    BernoulliAbsEven,
    BernoulliAbsEvenOverFactorial,
    Bell,
    Catalan,
    LasalleBigA,
    LasalleA,
    AMu,
    B,
    RayleighSigma,
    ZetaEvenRational,
}

impl Sequence {
    pub const ALL: [Sequence; 11] = [
        Sequence::Bernoulli,
        Sequence::BernoulliAbsEven,
        Sequence::BernoulliAbsEvenOverFactorial,
        Sequence::Bell,
        Sequence::Catalan,
        Sequence::LasalleBigA,
        Sequence::LasalleA,
        Sequence::AMu,
        Sequence::B,
        Sequence::RayleighSigma,
        Sequence::ZetaEvenRational,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Sequence::Bernoulli => "bernoulli",
            Sequence::BernoulliAbsEven => "bernoulli_abs_even",
            Sequence::BernoulliAbsEvenOverFactorial => "bernoulli_abs_even_over_factorial",
            Sequence::Bell => "bell",
            Sequence::Catalan => "catalan",
            Sequence::LasalleBigA => "lasalle_A",
            Sequence::LasalleA => "lasalle_a",
            Sequence::AMu => "a_mu",
            Sequence::B => "b",
            Sequence::RayleighSigma => "rayleigh_sigma",
            Sequence::ZetaEvenRational => "zeta_even_rational",
        }
    }

    /// Provenance label recorded on every window.
    pub fn generator_tag(self) -> &'static str {
        match self {
            Sequence::Bernoulli
            | Sequence::BernoulliAbsEven
            | Sequence::BernoulliAbsEvenOverFactorial
            | Sequence::ZetaEvenRational => "bernoulli-defining-recurrence",
            Sequence::Bell => "bell-binomial-convolution",
            Sequence::Catalan => "central-binomial",
            Sequence::LasalleBigA | Sequence::LasalleA => "lasalle-catalan-convolution",
            Sequence::AMu | Sequence::B | Sequence::RayleighSigma => "rayleigh-product-recurrence",
        }
    }

    pub fn first_index(self) -> usize {
        match self {
            Sequence::Bernoulli | Sequence::Bell => 0,
            _ => 1,
        }
    }

    pub fn needs_mu(self) -> bool {
        matches!(self, Sequence::AMu | Sequence::RayleighSigma)
    }

    /// Whether every term is strictly positive.
    pub fn is_sign_definite(self) -> bool {
        !matches!(self, Sequence::Bernoulli)
    }

    pub fn value(self, n: usize, mu: Option<&BigRational>) -> Result<BigRational, ExactError> {
        if n < self.first_index() {
            return Err(ExactError::IndexOutOfDomain {
                sequence: self.name(),
                index: n,
            });
        }
        let need_mu = || mu.ok_or(ExactError::MissingMu(self.name()));
        Ok(match self {
            Sequence::Bernoulli => bernoulli(n),
            Sequence::BernoulliAbsEven => bernoulli_abs_even(n),
            Sequence::BernoulliAbsEvenOverFactorial => bernoulli_abs_even_over_factorial(n),
            Sequence::Bell => bell(n),
            Sequence::Catalan => catalan(n),
            Sequence::LasalleBigA => lasalle_big_a(n),
            Sequence::LasalleA => lasalle_a(n),
            Sequence::AMu => a_mu(need_mu()?, n)?,
            Sequence::B => b_seq(n)?,
            Sequence::RayleighSigma => rayleigh_sigma(need_mu()?, n)?,
            Sequence::ZetaEvenRational => zeta_even_rational(n),
        })
    }
}

impl fmt::Display for Sequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Sequence {
    type Err = ExactError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Sequence::ALL
            .into_iter()
            .find(|q| q.name() == s)
            .ok_or_else(|| ExactError::UnknownSequence(s.to_string()))
    }
}

/// A contiguous run of exact values `values[i] = seq(start + i)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SequenceWindow {
    pub name: String,
    pub start: usize,
    pub values: Vec<BigRational>,
    pub generator_tag: String,
}

impl SequenceWindow {
    /// Wraps arbitrary values, e.g. for checker self-tests.
    pub fn from_values(name: impl Into<String>, start: usize, values: Vec<BigRational>) -> Result<Self, ExactError> {
        if values.is_empty() {
            return Err(ExactError::EmptyWindow);
        }
        Ok(SequenceWindow {
            name: name.into(),
            start,
            values,
            generator_tag: "caller-supplied".into(),
        })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Index of the last value.
    pub fn end(&self) -> usize {
        self.start + self.values.len() - 1
    }

    pub fn get(&self, index: usize) -> Option<&BigRational> {
        index.checked_sub(self.start).and_then(|i| self.values.get(i))
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &BigRational)> {
        self.values.iter().enumerate().map(move |(i, v)| (self.start + i, v))
    }
}

/// Materializes `seq(start), ..., seq(start + len - 1)`.
pub fn window(seq: Sequence, start: usize, len: usize, mu: Option<&BigRational>) -> Result<SequenceWindow, ExactError> {
    if len == 0 {
        return Err(ExactError::EmptyWindow);
    }
    if seq.needs_mu() && mu.is_none() {
        return Err(ExactError::MissingMu(seq.name()));
    }
    let values = (start..start + len)
        .map(|n| seq.value(n, mu))
        .collect::<Result<Vec<_>, _>>()?;
    if seq.is_sign_definite() {
        debug_assert!(
            values.iter().all(|v| *v > BigRational::zero()),
            "{seq} must be positive"
        );
    }
    Ok(SequenceWindow {
        name: match mu {
            Some(m) if seq.needs_mu() => format!("{}(mu={})", seq.name(), super::format_rational(m)),
            _ => seq.name().to_string(),
        },
        start,
        values,
        generator_tag: seq.generator_tag().to_string(),
    })
}
