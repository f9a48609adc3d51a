use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Property {
    LogConvex,
    LogConcave,
    NthRootIncreasing,
    MonotoneIncreasing,
    BoundHolds,
    /// Two generators agree term by term.
    Identity,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Holds,
    Fails,
    HoldsWithExceptions,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    ExactBigint,
    CertifiedFloat,
}

macro_rules! snake_name {
    ($t:ty) => {
        impl $t {
            pub fn name(self) -> String {
                serde_json::to_value(self)
                    .ok()
                    .and_then(|v| v.as_str().map(str::to_owned))
                    .unwrap_or_default()
            }
        }

        impl fmt::Display for $t {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&self.name())
            }
        }
    };
}

snake_name!(Property);
snake_name!(Verdict);
snake_name!(Method);

/// What a report ranged over.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Range {
    /// Inclusive index interval.
    Index {
        start: usize,
        end: usize,
    },
    Grid {
        lo: f64,
        hi: f64,
        step: f64,
        points: usize,
    },
    Points {
        values: Vec<String>,
    },
}

impl fmt::Display for Range {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Range::Index { start, end } => write!(f, "n = {start}..{end}"),
            Range::Grid { lo, hi, step, points } => write!(f, "x in [{lo}, {hi}] step {step} ({points} points)"),
            Range::Points { values } if values.len() > 8 => {
                write!(f, "{{{}, ...}} ({} points)", values[..3].join(", "), values.len())
            }
            Range::Points { values } => write!(f, "{{{}}}", values.join(", ")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Counterexample {
    /// Index or grid point.
    pub at: String,
    pub witnesses: BTreeMap<String, String>,
}

impl Counterexample {
    pub fn new(at: impl ToString, witnesses: impl IntoIterator<Item = (&'static str, String)>) -> Self {
        Counterexample {
            at: at.to_string(),
            witnesses: witnesses.into_iter().map(|(k, v)| (k.to_string(), v)).collect(),
        }
    }
}

/// The outcome of checking one property over one range.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PropertyReport {
    pub property: Property,
    pub subject: String,
    pub range: Range,
    pub verdict: Verdict,
    pub counterexamples: Vec<Counterexample>,
    pub method: Method,
    /// Comparisons performed.
    pub checked: usize,
    /// Comparisons that held strictly.
    pub strict: usize,
    /// Comparisons that held with equality.
    pub equalities: usize,
    /// Float comparisons too close to call at the working tolerance.
    pub inconclusive: usize,
    /// Whether a failure should count as a regression. Conjecture evidence and
    /// diagnostics are not gating.
    pub gating: bool,
    pub notes: BTreeMap<String, Value>,
}

impl PropertyReport {
    pub fn new(property: Property, subject: impl Into<String>, range: Range, method: Method) -> Self {
        PropertyReport {
            property,
            subject: subject.into(),
            range,
            verdict: Verdict::Holds,
            counterexamples: Vec::new(),
            method,
            checked: 0,
            strict: 0,
            equalities: 0,
            inconclusive: 0,
            gating: true,
            notes: BTreeMap::new(),
        }
    }

    pub fn non_gating(mut self) -> Self {
        self.gating = false;
        self
    }

    pub fn note(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.notes.insert(key.to_string(), value.into());
        self
    }

    pub(crate) fn push(&mut self, outcome: Outcome) {
        self.checked += 1;
        match outcome {
            Outcome::Strict => self.strict += 1,
            Outcome::Equal => self.equalities += 1,
            Outcome::Inconclusive => self.inconclusive += 1,
            Outcome::Fail(c) => self.counterexamples.push(c),
        }
        self.verdict = if self.counterexamples.is_empty() {
            Verdict::Holds
        } else {
            Verdict::Fails
        };
    }

    /// Downgrades a failing verdict to `holds_with_exceptions`, for reports
    /// where a finite set of early failures is expected.
    pub fn allow_exceptions(mut self) -> Self {
        if self.verdict == Verdict::Fails {
            self.verdict = Verdict::HoldsWithExceptions;
        }
        self
    }

    pub fn holds(&self) -> bool {
        self.verdict == Verdict::Holds
    }

    /// True when this report should fail a verification run.
    pub fn is_regression(&self) -> bool {
        self.gating && self.verdict != Verdict::Holds
    }

    /// One-line human summary.
    pub fn summary(&self) -> String {
        let mut s = format!(
            "{} {} on {}: {} ({} checked, {} strict, {} equal",
            self.subject, self.property, self.range, self.verdict, self.checked, self.strict, self.equalities
        );
        if self.inconclusive > 0 {
            s.push_str(&format!(", {} inconclusive", self.inconclusive));
        }
        if !self.counterexamples.is_empty() {
            s.push_str(&format!(", {} counterexamples", self.counterexamples.len()));
        }
        s.push_str(&format!("; {}", self.method));
        if !self.gating {
            s.push_str(", non-gating");
        }
        s.push(')');
        s
    }
}

/// Result of one comparison.
#[derive(Debug, Clone, PartialEq)]
pub(crate) enum Outcome {
    Strict,
    Equal,
    Inconclusive,
    Fail(Counterexample),
}
