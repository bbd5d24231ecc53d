//! Extended non-negative reals for divergences that may be infinite.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;

use serde::{Serialize, Serializer};

/// A divergence value: finite, or `+∞` when the support condition fails.
///
/// Infinity is an explicit variant so it never turns into NaN through `∞ - ∞`
/// or `0 · ∞` inside an optimizer or a weighted sum.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Divergence {
    Finite(f64),
    Infinite,
}

impl Divergence {
    pub const ZERO: Divergence = Divergence::Finite(0.0);

    pub fn is_finite(self) -> bool {
        matches!(self, Divergence::Finite(_))
    }

    /// `f64` view; `Infinite` maps to `f64::INFINITY`.
    pub fn value(self) -> f64 {
        match self {
            Divergence::Finite(x) => x,
            Divergence::Infinite => f64::INFINITY,
        }
    }

    pub fn finite(self) -> Option<f64> {
        match self {
            Divergence::Finite(x) => Some(x),
            Divergence::Infinite => None,
        }
    }

    /// Multiplication by a probability weight with `0 · ∞ = 0`.
    pub fn weighted(self, w: f64) -> Divergence {
        match self {
            _ if w == 0.0 => Divergence::ZERO,
            Divergence::Finite(x) => Divergence::Finite(w * x),
            Divergence::Infinite => Divergence::Infinite,
        }
    }
}

impl From<f64> for Divergence {
    fn from(x: f64) -> Self {
        if x.is_infinite() && x > 0.0 {
            Divergence::Infinite
        } else {
            Divergence::Finite(x)
        }
    }
}

impl Add for Divergence {
    type Output = Divergence;
    fn add(self, rhs: Divergence) -> Divergence {
        match (self, rhs) {
            (Divergence::Finite(a), Divergence::Finite(b)) => Divergence::Finite(a + b),
            _ => Divergence::Infinite,
        }
    }
}

impl std::iter::Sum for Divergence {
    fn sum<I: Iterator<Item = Divergence>>(iter: I) -> Self {
        iter.fold(Divergence::ZERO, Add::add)
    }
}

impl PartialOrd for Divergence {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match (self, other) {
            (Divergence::Finite(a), Divergence::Finite(b)) => a.partial_cmp(b),
            (Divergence::Finite(_), Divergence::Infinite) => Some(Ordering::Less),
            (Divergence::Infinite, Divergence::Finite(_)) => Some(Ordering::Greater),
            (Divergence::Infinite, Divergence::Infinite) => Some(Ordering::Equal),
        }
    }
}

impl fmt::Display for Divergence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Divergence::Finite(x) => fmt::Display::fmt(x, f),
            Divergence::Infinite => f.write_str("inf"),
        }
    }
}

/// Finite values serialize as JSON numbers, infinity as the string `"inf"`.
impl Serialize for Divergence {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Divergence::Finite(x) => s.serialize_f64(*x),
            Divergence::Infinite => s.serialize_str("inf"),
        }
    }
}
