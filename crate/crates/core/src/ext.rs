//! Natural numbers extended with `+inf`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Sub};
use std::str::FromStr;

use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A nonnegative integer or `+inf`.
///
/// Arithmetic follows the game conventions: `inf - inf = inf`,
/// `inf - n = inf`, and the minimum of an empty set is `inf`.
/// The derived order places every finite value below `Inf`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ExtNat {
    Fin(u64),
    #[default]
    Inf,
}

pub use ExtNat::{Fin, Inf};

impl ExtNat {
    pub const ZERO: ExtNat = Fin(0);

    pub fn is_finite(self) -> bool {
        matches!(self, Fin(_))
    }

    pub fn finite(self) -> Option<u64> {
        match self {
            Fin(n) => Some(n),
            Inf => None,
        }
    }

    /// Difference `self - rhs`, or `None` when it would be negative.
    pub fn checked_sub(self, rhs: ExtNat) -> Option<ExtNat> {
        match (self, rhs) {
            (Inf, _) => Some(Inf),
            (Fin(_), Inf) => None,
            (Fin(a), Fin(b)) => a.checked_sub(b).map(Fin),
        }
    }

    /// `self - min(self, bound)`: the excess of `self` over `bound`.
    pub fn excess_over(self, bound: ExtNat) -> ExtNat {
        self - self.min(bound)
    }

    /// Minimum of an iterator, `inf` when empty.
    pub fn min_of<I: IntoIterator<Item = ExtNat>>(values: I) -> ExtNat {
        values.into_iter().min().unwrap_or(Inf)
    }
}

impl From<u64> for ExtNat {
    fn from(n: u64) -> Self {
        Fin(n)
    }
}

impl Add for ExtNat {
    type Output = ExtNat;

    fn add(self, rhs: ExtNat) -> ExtNat {
        match (self, rhs) {
            (Fin(a), Fin(b)) => Fin(a.checked_add(b).expect("extended natural overflow")),
            _ => Inf,
        }
    }
}

impl Add<u64> for ExtNat {
    type Output = ExtNat;

    fn add(self, rhs: u64) -> ExtNat {
        self + Fin(rhs)
    }
}

impl Sub for ExtNat {
    type Output = ExtNat;

    /// Panics when the result would be negative (a finite value minus a
    /// larger one, or a finite value minus `inf`).
    fn sub(self, rhs: ExtNat) -> ExtNat {
        self.checked_sub(rhs)
            .unwrap_or_else(|| panic!("negative extended difference {self} - {rhs}"))
    }
}

impl PartialEq<u64> for ExtNat {
    fn eq(&self, other: &u64) -> bool {
        *self == Fin(*other)
    }
}

impl PartialOrd<u64> for ExtNat {
    fn partial_cmp(&self, other: &u64) -> Option<Ordering> {
        Some(self.cmp(&Fin(*other)))
    }
}

impl fmt::Display for ExtNat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Fin(n) => write!(f, "{n}"),
            Inf => f.write_str("inf"),
        }
    }
}

#[derive(Debug, thiserror::Error)]
#[error("expected a nonnegative integer or \"inf\", found {0:?}")]
pub struct ParseExtNatError(String);

impl FromStr for ExtNat {
    type Err = ParseExtNatError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "inf" | "+inf" | "∞" => Ok(Inf),
            t => t.parse().map(Fin).map_err(|_| ParseExtNatError(s.to_string())),
        }
    }
}

impl Serialize for ExtNat {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Fin(n) => serializer.serialize_u64(*n),
            Inf => serializer.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for ExtNat {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct ExtVisitor;

        impl Visitor<'_> for ExtVisitor {
            type Value = ExtNat;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("a nonnegative integer or \"inf\"")
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<ExtNat, E> {
                Ok(Fin(v))
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<ExtNat, E> {
                u64::try_from(v)
                    .map(Fin)
                    .map_err(|_| E::invalid_value(de::Unexpected::Signed(v), &self))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<ExtNat, E> {
                v.parse().map_err(|_| E::invalid_value(de::Unexpected::Str(v), &self))
            }
        }

        deserializer.deserialize_any(ExtVisitor)
    }
}
