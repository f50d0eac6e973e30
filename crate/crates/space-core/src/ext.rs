use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;

use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::ExtRealError;

/// How a returned value relates to the quantity it estimates (a supremum
/// for time separations, an infimum for distances and cover premeasures).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundKind {
    Exact,
    LowerBound,
    UpperBound,
    Approximation,
}

/// A time separation value: a finite nonnegative real or positive infinity.
///
/// Addition saturates to `Infinite`. Scaling by zero is only defined for
/// finite values; `0 * inf` is reported as an error rather than given a value.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ExtReal {
    Finite(f64),
    Infinite,
}

impl ExtReal {
    pub const ZERO: ExtReal = ExtReal::Finite(0.0);

    /// Wraps a finite value. Precondition: `v` is finite (not NaN, not inf).
    pub fn finite(v: f64) -> ExtReal {
        assert!(v.is_finite(), "ExtReal::finite called with {v}");
        ExtReal::Finite(v)
    }

    pub fn is_finite(self) -> bool {
        matches!(self, ExtReal::Finite(_))
    }

    pub fn as_finite(self) -> Option<f64> {
        match self {
            ExtReal::Finite(v) => Some(v),
            ExtReal::Infinite => None,
        }
    }

    /// Unwraps a finite value, reporting `context` on failure.
    pub fn expect_finite(self, context: &str) -> Result<f64, ExtRealError> {
        self.as_finite().ok_or_else(|| ExtRealError::InfiniteValue {
            context: context.to_string(),
        })
    }

    /// Multiplies by a nonnegative finite scalar. `0 * inf` is an error.
    pub fn scale(self, c: f64) -> Result<ExtReal, ExtRealError> {
        if !c.is_finite() || c < 0.0 {
            return Err(ExtRealError::BadScale(c));
        }
        match self {
            ExtReal::Finite(v) => Ok(ExtReal::finite(c * v)),
            ExtReal::Infinite if c == 0.0 => Err(ExtRealError::ZeroTimesInfinity),
            ExtReal::Infinite => Ok(ExtReal::Infinite),
        }
    }

    /// True when the value is strictly positive (infinity counts).
    pub fn is_positive(self) -> bool {
        match self {
            ExtReal::Finite(v) => v > 0.0,
            ExtReal::Infinite => true,
        }
    }
}

impl Add for ExtReal {
    type Output = ExtReal;

    fn add(self, rhs: ExtReal) -> ExtReal {
        match (self, rhs) {
            (ExtReal::Finite(a), ExtReal::Finite(b)) => {
                let s = a + b;
                if s.is_finite() {
                    ExtReal::Finite(s)
                } else {
                    ExtReal::Infinite
                }
            }
            _ => ExtReal::Infinite,
        }
    }
}

impl PartialOrd for ExtReal {
    fn partial_cmp(&self, other: &ExtReal) -> Option<Ordering> {
        match (self, other) {
            (ExtReal::Finite(a), ExtReal::Finite(b)) => a.partial_cmp(b),
            (ExtReal::Finite(_), ExtReal::Infinite) => Some(Ordering::Less),
            (ExtReal::Infinite, ExtReal::Finite(_)) => Some(Ordering::Greater),
            (ExtReal::Infinite, ExtReal::Infinite) => Some(Ordering::Equal),
        }
    }
}

impl fmt::Display for ExtReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtReal::Finite(v) => write!(f, "{v}"),
            ExtReal::Infinite => write!(f, "inf"),
        }
    }
}

impl Serialize for ExtReal {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            ExtReal::Finite(v) => s.serialize_f64(*v),
            ExtReal::Infinite => s.serialize_str("inf"),
        }
    }
}

struct ExtRealVisitor;

impl<'de> Visitor<'de> for ExtRealVisitor {
    type Value = ExtReal;

    fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str("a finite number or the string \"inf\"")
    }

    fn visit_f64<E: de::Error>(self, v: f64) -> Result<ExtReal, E> {
        if v.is_finite() {
            Ok(ExtReal::Finite(v))
        } else {
            Err(E::custom("non-finite number; use \"inf\""))
        }
    }

    fn visit_i64<E: de::Error>(self, v: i64) -> Result<ExtReal, E> {
        Ok(ExtReal::Finite(v as f64))
    }

    fn visit_u64<E: de::Error>(self, v: u64) -> Result<ExtReal, E> {
        Ok(ExtReal::Finite(v as f64))
    }

    fn visit_str<E: de::Error>(self, v: &str) -> Result<ExtReal, E> {
        if v == "inf" {
            Ok(ExtReal::Infinite)
        } else {
            Err(E::custom(format!("expected \"inf\", got {v:?}")))
        }
    }
}

impl<'de> Deserialize<'de> for ExtReal {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<ExtReal, D::Error> {
        d.deserialize_any(ExtRealVisitor)
    }
}
