//! Report primitives shared by profiles, bound functionals and the CLI:
//! values that are finite, certified infinite, or unresolved.

use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Finite,
    Infinite,
    Unknown,
}

/// A numeric quantity with divergence bookkeeping. Infinite values carry
/// the diagnostic that certified them; unknown values carry partial sums.
#[derive(Clone, Debug)]
pub struct Quantity {
    pub verdict: Verdict,
    pub value: Option<f64>,
    pub err: f64,
    pub note: Option<String>,
}

impl Quantity {
    pub fn finite(value: f64, err: f64) -> Self {
        Quantity { verdict: Verdict::Finite, value: Some(value), err, note: None }
    }

    pub fn infinite(note: impl Into<String>) -> Self {
        Quantity { verdict: Verdict::Infinite, value: None, err: 0.0, note: Some(note.into()) }
    }

    pub fn unknown(note: impl Into<String>, partial: Option<f64>) -> Self {
        Quantity { verdict: Verdict::Unknown, value: partial, err: 0.0, note: Some(note.into()) }
    }

    pub fn zero() -> Self {
        Quantity::finite(0.0, 0.0)
    }

    pub fn is_finite(&self) -> bool {
        self.verdict == Verdict::Finite
    }

    pub fn is_infinite(&self) -> bool {
        self.verdict == Verdict::Infinite
    }

    pub fn expect_finite(&self) -> f64 {
        assert!(self.is_finite(), "expected finite quantity: {:?}", self);
        self.value.unwrap()
    }

    pub fn add(&self, other: &Quantity) -> Quantity {
        use Verdict::*;
        match (self.verdict, other.verdict) {
            (Infinite, _) => self.clone(),
            (_, Infinite) => other.clone(),
            (Unknown, _) => self.clone(),
            (_, Unknown) => other.clone(),
            (Finite, Finite) => Quantity::finite(
                self.value.unwrap() + other.value.unwrap(),
                self.err + other.err,
            ),
        }
    }

    pub fn scale(&self, c: f64) -> Quantity {
        match self.verdict {
            Verdict::Finite => Quantity::finite(self.value.unwrap() * c, self.err * c.abs()),
            _ => self.clone(),
        }
    }
}

/// Fixed-precision float rendering for deterministic reports.
pub fn fmt_float(v: f64) -> String {
    format!("{v:.12e}")
}
