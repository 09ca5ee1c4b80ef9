//! Named permutations that appear throughout the theory.

use std::fmt;
use std::str::FromStr;

use super::{CycleFamily, PermError, PermPresentation};
use crate::count::Count;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CatalogName {
    /// Successor on ℕ.
    S,
    /// Its inverse.
    SInv,
    /// One cycle of length `n!` for each `n`.
    R,
    /// `(n, z) ↦ (n, z + 1)` on ω × ℤ.
    T,
    /// Successor on ℤ.
    Z,
    /// `(m, n) ↦ (m, n + 1)` on ω × ω. Not a permutation.
    U,
    /// Infinitely many `n`-cycles.
    C(u64),
    TJoinR,
    SJoinSInv,
}

impl CatalogName {
    /// Parses a canonical name. `c` takes its length either from `parameter`
    /// or inline (`c_4`, `c4`).
    pub fn parse(name: &str, parameter: Option<u64>) -> Result<Self, PermError> {
        let name = name.trim();
        let simple = match name {
            "s" => Some(CatalogName::S),
            "s_inv" | "s^-1" | "s⁻¹" => Some(CatalogName::SInv),
            "r" => Some(CatalogName::R),
            "t" => Some(CatalogName::T),
            "z" => Some(CatalogName::Z),
            "u" => Some(CatalogName::U),
            "t_join_r" | "t∨r" | "tvr" => Some(CatalogName::TJoinR),
            "s_join_s_inv" | "s∨s⁻¹" => Some(CatalogName::SJoinSInv),
            _ => None,
        };
        if let Some(found) = simple {
            return Ok(found);
        }
        if name == "c" {
            return match parameter {
                Some(n) if n >= 1 => Ok(CatalogName::C(n)),
                Some(_) => Err(PermError::InvalidFamily("c_n needs n >= 1".into())),
                None => Err(PermError::MissingParameter(name.to_string())),
            };
        }
        if let Some(rest) = name.strip_prefix("c_").or_else(|| name.strip_prefix('c')) {
            if let Ok(n) = rest.parse::<u64>() {
                return if n >= 1 {
                    Ok(CatalogName::C(n))
                } else {
                    Err(PermError::InvalidFamily("c_n needs n >= 1".into()))
                };
            }
        }
        Err(PermError::UnknownName(name.to_string()))
    }

    /// The inverse map's name; everything but the shift is its own inverse.
    pub fn inverse(self) -> CatalogName {
        match self {
            CatalogName::S => CatalogName::SInv,
            CatalogName::SInv => CatalogName::S,
            other => other,
        }
    }

    pub fn is_permutation(self) -> bool {
        self != CatalogName::U
    }

    /// The fixed catalog used by audits and golden tables.
    pub fn standard() -> Vec<CatalogName> {
        vec![
            CatalogName::S,
            CatalogName::SInv,
            CatalogName::R,
            CatalogName::T,
            CatalogName::Z,
            CatalogName::U,
            CatalogName::C(2),
            CatalogName::C(3),
            CatalogName::C(6),
            CatalogName::TJoinR,
            CatalogName::SJoinSInv,
        ]
    }
}

impl FromStr for CatalogName {
    type Err = PermError;

    fn from_str(s: &str) -> Result<Self, PermError> {
        CatalogName::parse(s, None)
    }
}

impl fmt::Display for CatalogName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CatalogName::S => f.write_str("s"),
            CatalogName::SInv => f.write_str("s_inv"),
            CatalogName::R => f.write_str("r"),
            CatalogName::T => f.write_str("t"),
            CatalogName::Z => f.write_str("z"),
            CatalogName::U => f.write_str("u"),
            CatalogName::C(n) => write!(f, "c_{n}"),
            CatalogName::TJoinR => f.write_str("t_join_r"),
            CatalogName::SJoinSInv => f.write_str("s_join_s_inv"),
        }
    }
}

/// The canonical presentation of a named permutation.
pub fn catalog(name: &CatalogName) -> Result<PermPresentation, PermError> {
    let p = match *name {
        CatalogName::S => PermPresentation::new(1, 0, 0, vec![])?,
        CatalogName::SInv => PermPresentation::new(0, 1, 0, vec![])?,
        CatalogName::R => PermPresentation::new(0, 0, 0, vec![CycleFamily::Factorial { offset: 1 }])?,
        CatalogName::T => PermPresentation::new(0, 0, Count::Omega, vec![])?,
        CatalogName::Z => PermPresentation::new(0, 0, 1, vec![])?,
        CatalogName::C(n) => PermPresentation::new(0, 0, 0, vec![CycleFamily::fixed(n, Count::Omega)])?,
        CatalogName::TJoinR => catalog(&CatalogName::T)?.join(&catalog(&CatalogName::R)?),
        CatalogName::SJoinSInv => catalog(&CatalogName::S)?.join(&catalog(&CatalogName::SInv)?),
        CatalogName::U => return Err(PermError::NotAPermutation(name.to_string())),
    };
    Ok(p)
}

/// Convenience lookup by string, panicking on unknown names. Meant for tests and examples.
pub fn named(name: &str) -> PermPresentation {
    let parsed = CatalogName::parse(name, None).unwrap_or_else(|e| panic!("{e}"));
    catalog(&parsed).unwrap_or_else(|e| panic!("{e}"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_presentations() {
        assert_eq!(named("t"), PermPresentation::new(0, 0, Count::Omega, vec![]).unwrap());
        assert_eq!(named("s"), PermPresentation::new(1, 0, 0, vec![]).unwrap());
        assert_eq!(
            catalog(&CatalogName::parse("c", Some(4)).unwrap()).unwrap(),
            PermPresentation::new(0, 0, 0, vec![CycleFamily::fixed(4, Count::Omega)]).unwrap()
        );
        assert_eq!(named("s_join_s_inv"), named("z"));
    }

    #[test]
    fn parameter_and_name_errors() {
        assert!(matches!(
            CatalogName::parse("c", None),
            Err(PermError::MissingParameter(_))
        ));
        assert!(matches!(
            CatalogName::parse("w", None),
            Err(PermError::UnknownName(_))
        ));
        assert!(matches!(
            catalog(&CatalogName::U),
            Err(PermError::NotAPermutation(_))
        ));
        assert_eq!(CatalogName::parse("c7", None).unwrap(), CatalogName::C(7));
    }

    #[test]
    fn display_round_trips() {
        for name in CatalogName::standard() {
            assert_eq!(name.to_string().parse::<CatalogName>().unwrap(), name);
        }
    }
}
