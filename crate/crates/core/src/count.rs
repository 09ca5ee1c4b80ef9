//! Cardinalities that are either a natural number or countably infinite.

use std::fmt;
use std::ops::{Add, Mul};

use serde::de::{self, Deserializer, Visitor};
use serde::{Deserialize, Serialize, Serializer};

/// A natural number or ω.
///
/// Variant order gives the total order `n < ω` for every natural `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Count {
    Finite(u64),
    Omega,
}

impl Count {
    pub const ZERO: Count = Count::Finite(0);

    pub fn is_omega(self) -> bool {
        matches!(self, Count::Omega)
    }

    pub fn is_zero(self) -> bool {
        self == Count::ZERO
    }

    pub fn finite(self) -> Option<u64> {
        match self {
            Count::Finite(n) => Some(n),
            Count::Omega => None,
        }
    }
}

impl Default for Count {
    fn default() -> Self {
        Count::ZERO
    }
}

impl From<u64> for Count {
    fn from(n: u64) -> Self {
        Count::Finite(n)
    }
}

impl Add for Count {
    type Output = Count;

    fn add(self, rhs: Count) -> Count {
        match (self, rhs) {
            (Count::Finite(a), Count::Finite(b)) => Count::Finite(a.saturating_add(b)),
            _ => Count::Omega,
        }
    }
}

impl Add<u64> for Count {
    type Output = Count;

    fn add(self, rhs: u64) -> Count {
        self + Count::Finite(rhs)
    }
}

impl Mul<u64> for Count {
    type Output = Count;

    /// `ω · 0 = 0`; otherwise ω absorbs.
    fn mul(self, rhs: u64) -> Count {
        match self {
            Count::Finite(a) => Count::Finite(a.saturating_mul(rhs)),
            Count::Omega if rhs == 0 => Count::ZERO,
            Count::Omega => Count::Omega,
        }
    }
}

impl fmt::Display for Count {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Count::Finite(n) => write!(f, "{n}"),
            Count::Omega => f.write_str("ω"),
        }
    }
}

// JSON form: a non-negative integer or the string "omega".
impl Serialize for Count {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Count::Finite(n) => serializer.serialize_u64(*n),
            Count::Omega => serializer.serialize_str("omega"),
        }
    }
}

impl<'de> Deserialize<'de> for Count {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct CountVisitor;

        impl Visitor<'_> for CountVisitor {
            type Value = Count;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str("a non-negative integer or \"omega\"")
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<Count, E> {
                Ok(Count::Finite(v))
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<Count, E> {
                u64::try_from(v)
                    .map(Count::Finite)
                    .map_err(|_| E::custom(format!("negative count {v}")))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<Count, E> {
                match v {
                    "omega" | "ω" => Ok(Count::Omega),
                    other => Err(E::custom(format!("expected \"omega\", found {other:?}"))),
                }
            }
        }

        deserializer.deserialize_any(CountVisitor)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn any_count() -> impl Strategy<Value = Count> {
        prop_oneof![
            (0u64..1000).prop_map(Count::Finite),
            Just(Count::Omega),
        ]
    }

    #[test]
    fn omega_absorbs_addition() {
        assert_eq!(Count::Finite(7) + Count::Omega, Count::Omega);
        assert_eq!(Count::Omega + 0, Count::Omega);
        assert_eq!(Count::Finite(2) + 3, Count::Finite(5));
    }

    #[test]
    fn every_natural_is_below_omega() {
        assert!(Count::Finite(u64::MAX) < Count::Omega);
        assert!(Count::Finite(0) < Count::Finite(1));
    }

    #[test]
    fn json_forms() {
        assert_eq!(serde_json::to_string(&Count::Omega).unwrap(), "\"omega\"");
        assert_eq!(serde_json::from_str::<Count>("12").unwrap(), Count::Finite(12));
        assert!(serde_json::from_str::<Count>("-1").is_err());
        assert!(serde_json::from_str::<Count>("\"inf\"").is_err());
    }

    proptest! {
        #[test]
        fn addition_is_commutative_and_monotone(a in any_count(), b in any_count()) {
            prop_assert_eq!(a + b, b + a);
            prop_assert!(a + b >= a);
        }

        #[test]
        fn json_round_trip(c in any_count()) {
            let text = serde_json::to_string(&c).unwrap();
            prop_assert_eq!(serde_json::from_str::<Count>(&text).unwrap(), c);
        }
    }
}
