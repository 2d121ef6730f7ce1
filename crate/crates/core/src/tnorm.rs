//! Truth degrees and the residuated structure on the unit interval.
//!
//! A left-continuous t-norm `∗` comes with its residuum `→`, characterised by
//! the adjunction `a ∗ c ≤ b  ⇔  c ≤ a → b`, and the negation `¬a = a → 0`.
//! The three classical t-norms are built in through [`TNormId`]; other
//! left-continuous t-norms can be plugged in by implementing [`TNorm`].

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// Absolute tolerance used by every `≤` / `=` predicate on degrees.
pub const EPSILON: f64 = 1e-9;

/// A truth degree in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Default, Serialize)]
#[serde(transparent)]
#[repr(transparent)]
pub struct Degree(f64);

impl Degree {
    pub const ZERO: Degree = Degree(0.0);
    pub const ONE: Degree = Degree(1.0);

    /// Rejects anything outside `[0, 1]`, NaN included.
    pub fn new(value: f64) -> Result<Self, Error> {
        if (0.0..=1.0).contains(&value) {
            Ok(Degree(value))
        } else {
            Err(Error::DegreeOutOfRange(value))
        }
    }

    /// Clamps arithmetic results back into the unit interval.
    pub(crate) fn clamped(value: f64) -> Self {
        debug_assert!(!value.is_nan());
        Degree(value.clamp(0.0, 1.0))
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.0
    }

    #[inline]
    pub fn max(self, other: Degree) -> Degree {
        if other.0 > self.0 {
            other
        } else {
            self
        }
    }

    #[inline]
    pub fn min(self, other: Degree) -> Degree {
        if other.0 < self.0 {
            other
        } else {
            self
        }
    }

    /// `self ≤ other` up to [`EPSILON`].
    #[inline]
    pub fn approx_le(self, other: Degree) -> bool {
        self.0 <= other.0 + EPSILON
    }

    #[inline]
    pub fn approx_eq(self, other: Degree) -> bool {
        (self.0 - other.0).abs() <= EPSILON
    }

    /// Strictly positive beyond tolerance.
    #[inline]
    pub fn is_positive(self) -> bool {
        self.0 > EPSILON
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 <= EPSILON
    }

    #[inline]
    pub fn is_one(self) -> bool {
        self.0 >= 1.0 - EPSILON
    }
}

impl TryFrom<f64> for Degree {
    type Error = Error;

    fn try_from(value: f64) -> Result<Self, Error> {
        Degree::new(value)
    }
}

impl From<Degree> for f64 {
    fn from(d: Degree) -> f64 {
        d.0
    }
}

impl<'de> Deserialize<'de> for Degree {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let v = f64::deserialize(deserializer)?;
        Degree::new(v).map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // Shortest representation that parses back to the same double.
        fmt::Display::fmt(&self.0, f)
    }
}

/// A left-continuous t-norm together with its residuum and negation.
///
/// Implementations must satisfy the adjunction `conjoin(a, c) ≤ b` iff
/// `c ≤ residuum(a, b)`; [`crate::oracle::verify_adjunction_grid`] checks it
/// on a finite grid.
pub trait TNorm {
    fn conjoin(&self, a: Degree, b: Degree) -> Degree;

    fn residuum(&self, a: Degree, b: Degree) -> Degree;

    fn negation(&self, a: Degree) -> Degree {
        self.residuum(a, Degree::ZERO)
    }

    /// Which built-in t-norm this is, if any.
    fn builtin(&self) -> Option<TNormId> {
        None
    }
}

impl<T: TNorm + ?Sized> TNorm for &T {
    fn conjoin(&self, a: Degree, b: Degree) -> Degree {
        (**self).conjoin(a, b)
    }

    fn residuum(&self, a: Degree, b: Degree) -> Degree {
        (**self).residuum(a, b)
    }

    fn negation(&self, a: Degree) -> Degree {
        (**self).negation(a)
    }

    fn builtin(&self) -> Option<TNormId> {
        (**self).builtin()
    }
}

/// The built-in t-norms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TNormId {
    /// `min(a, b)`
    Godel,
    /// `max(0, a + b - 1)`
    Lukasiewicz,
    /// `a · b`
    Product,
}

impl TNormId {
    pub const ALL: [TNormId; 3] = [TNormId::Godel, TNormId::Lukasiewicz, TNormId::Product];

    pub fn as_str(self) -> &'static str {
        match self {
            TNormId::Godel => "godel",
            TNormId::Lukasiewicz => "lukasiewicz",
            TNormId::Product => "product",
        }
    }
}

impl TNorm for TNormId {
    fn conjoin(&self, a: Degree, b: Degree) -> Degree {
        match self {
            TNormId::Godel => a.min(b),
            TNormId::Lukasiewicz => Degree::clamped(a.0 + b.0 - 1.0),
            TNormId::Product => Degree::clamped(a.0 * b.0),
        }
    }

    fn residuum(&self, a: Degree, b: Degree) -> Degree {
        if a.0 <= b.0 {
            return Degree::ONE;
        }
        match self {
            TNormId::Godel => b,
            TNormId::Lukasiewicz => Degree::clamped(1.0 - a.0 + b.0),
            // a > b ≥ 0 here, so the division is well defined
            TNormId::Product => Degree::clamped(b.0 / a.0),
        }
    }

    fn negation(&self, a: Degree) -> Degree {
        match self {
            TNormId::Lukasiewicz => Degree::clamped(1.0 - a.0),
            TNormId::Godel | TNormId::Product => {
                if a.0 == 0.0 {
                    Degree::ONE
                } else {
                    Degree::ZERO
                }
            }
        }
    }

    fn builtin(&self) -> Option<TNormId> {
        Some(*self)
    }
}

impl fmt::Display for TNormId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TNormId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "godel" => Ok(TNormId::Godel),
            "lukasiewicz" => Ok(TNormId::Lukasiewicz),
            "product" => Ok(TNormId::Product),
            other => Err(Error::UnknownTNorm(other.to_string())),
        }
    }
}

/// Free-function form of [`TNorm::conjoin`].
pub fn conjoin(t: impl TNorm, a: Degree, b: Degree) -> Degree {
    t.conjoin(a, b)
}

/// Free-function form of [`TNorm::residuum`].
pub fn residuum(t: impl TNorm, a: Degree, b: Degree) -> Degree {
    t.residuum(a, b)
}

/// Free-function form of [`TNorm::negation`].
pub fn negation(t: impl TNorm, a: Degree) -> Degree {
    t.negation(a)
}
