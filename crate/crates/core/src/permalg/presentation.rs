use std::fmt;

use serde::{Deserialize, Serialize};

use super::catalog::{self, CatalogName};
use super::PermError;
use crate::count::Count;

/// One family of finite cycles in a cycle spectrum.
///
/// Apart from `Fixed` with finite multiplicity, every family denotes
/// infinitely many cycles.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum CycleFamily {
    /// `mult` cycles, each of length `period`.
    Fixed { period: u64, mult: Count },
    /// One cycle of length `n!` for every `n >= offset`.
    Factorial { offset: u64 },
    /// One cycle of length `lcm(1, ..., n)` for every `n >= offset`.
    Lcm { offset: u64 },
    /// One cycle of length `a * n + b` for every `n >= 1`.
    #[serde(rename = "arith")]
    Arithmetic { a: u64, b: u64 },
}

impl CycleFamily {
    pub fn fixed(period: u64, mult: impl Into<Count>) -> Self {
        CycleFamily::Fixed {
            period,
            mult: mult.into(),
        }
    }

    /// True when the family contributes infinitely many cycles.
    pub fn is_infinite(&self) -> bool {
        match self {
            CycleFamily::Fixed { mult, .. } => mult.is_omega(),
            _ => true,
        }
    }

    fn validate(&self) -> Result<(), PermError> {
        match *self {
            CycleFamily::Fixed { period: 0, .. } => Err(PermError::InvalidFamily(
                "fixed family needs period >= 1".into(),
            )),
            CycleFamily::Arithmetic { a: 0, .. } => Err(PermError::InvalidFamily(
                "arithmetic family needs a >= 1".into(),
            )),
            _ => Ok(()),
        }
    }

    /// Whether all but finitely many cycles of this family have a period
    /// divisible by every `k`.
    fn is_pan_divisible(&self) -> bool {
        match self {
            // k = period + 1 never divides `period`, and there are infinitely many such cycles.
            CycleFamily::Fixed { mult, .. } => !mult.is_omega(),
            CycleFamily::Factorial { .. } | CycleFamily::Lcm { .. } => true,
            // For k > a + b the residues of a*n + b mod k cannot vanish on a tail:
            // consecutive differences are a, which is nonzero mod k.
            CycleFamily::Arithmetic { .. } => false,
        }
    }
}

impl fmt::Display for CycleFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CycleFamily::Fixed { period, mult } => write!(f, "Fixed({period},{mult})"),
            CycleFamily::Factorial { offset } => write!(f, "Factorial({offset})"),
            CycleFamily::Lcm { offset } => write!(f, "Lcm({offset})"),
            CycleFamily::Arithmetic { a, b } => write!(f, "Arith({a},{b})"),
        }
    }
}

/// A mod-finite permutation of ω, presented by its orbit counts and cycle spectrum.
///
/// JSON accepts either the explicit object
/// `{"n":1,"bn":0,"z":"omega","spectrum":[...]}` or a catalog shorthand
/// such as `{"name":"t"}` / `{"name":"c","parameter":4}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "PresentationRepr")]
pub struct PermPresentation {
    #[serde(rename = "n")]
    pub n_orbits: u64,
    #[serde(rename = "bn")]
    pub bn_orbits: u64,
    #[serde(rename = "z")]
    pub z_orbits: Count,
    pub spectrum: Vec<CycleFamily>,
}

/// Either form of the JSON input. Fields are checked one by one so that
/// type errors keep their line and column.
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PresentationRepr {
    n: Option<u64>,
    bn: Option<u64>,
    z: Option<Count>,
    spectrum: Option<Vec<CycleFamily>>,
    name: Option<String>,
    parameter: Option<u64>,
}

impl TryFrom<PresentationRepr> for PermPresentation {
    type Error = PermError;

    fn try_from(repr: PresentationRepr) -> Result<Self, PermError> {
        match repr {
            PresentationRepr {
                name: Some(name),
                parameter,
                n: None,
                bn: None,
                z: None,
                spectrum: None,
            } => catalog::catalog(&CatalogName::parse(&name, parameter)?),
            PresentationRepr { name: Some(_), .. } => Err(PermError::MissingParameter(
                "give either `name` or the explicit fields `n`, `bn`, `z`, `spectrum`".into(),
            )),
            PresentationRepr {
                n: Some(n),
                bn: Some(bn),
                z: Some(z),
                spectrum,
                parameter: None,
                ..
            } => PermPresentation::new(n, bn, z, spectrum.unwrap_or_default()),
            PresentationRepr { parameter: Some(_), .. } => {
                Err(PermError::MissingParameter("`parameter` needs `name`".into()))
            }
            _ => Err(PermError::MissingParameter("explicit form needs `n`, `bn` and `z`".into())),
        }
    }
}

impl PermPresentation {
    pub fn new(
        n_orbits: u64,
        bn_orbits: u64,
        z_orbits: impl Into<Count>,
        spectrum: Vec<CycleFamily>,
    ) -> Result<Self, PermError> {
        for family in &spectrum {
            family.validate()?;
        }
        Ok(PermPresentation {
            n_orbits,
            bn_orbits,
            z_orbits: z_orbits.into(),
            spectrum,
        })
    }

    /// The empty permutation; the identity for [`join`](Self::join).
    pub fn empty() -> Self {
        PermPresentation {
            n_orbits: 0,
            bn_orbits: 0,
            z_orbits: Count::ZERO,
            spectrum: Vec::new(),
        }
    }

    pub fn is_normal(&self) -> bool {
        *self == self.normalize()
    }

    /// Merges opposite one-sided orbits into ℤ-orbits and puts the spectrum
    /// in canonical order, with `Fixed` families merged by period.
    pub fn normalize(&self) -> PermPresentation {
        let paired = self.n_orbits.min(self.bn_orbits);
        PermPresentation {
            n_orbits: self.n_orbits - paired,
            bn_orbits: self.bn_orbits - paired,
            z_orbits: self.z_orbits + paired,
            spectrum: canonical_spectrum(&self.spectrum),
        }
    }

    /// δ(p): ℕ-orbits plus backwards ℕ-orbits plus twice the ℤ-orbits.
    pub fn index(&self) -> Count {
        match self.z_orbits {
            Count::Omega => Count::Omega,
            Count::Finite(z) => Count::Finite(self.n_orbits + self.bn_orbits + 2 * z),
        }
    }

    pub fn is_pan_divisible(&self) -> bool {
        self.spectrum.iter().all(CycleFamily::is_pan_divisible)
    }

    /// The cyclic part is finite.
    pub fn is_acyclic(&self) -> bool {
        !self.spectrum.iter().any(CycleFamily::is_infinite)
    }

    /// Every orbit is a finite cycle.
    pub fn is_cyclic(&self) -> bool {
        self.n_orbits == 0 && self.bn_orbits == 0 && self.z_orbits.is_zero()
    }

    /// The presentation of `p⁻¹`, in normal form.
    pub fn inverse(&self) -> PermPresentation {
        PermPresentation {
            n_orbits: self.bn_orbits,
            bn_orbits: self.n_orbits,
            z_orbits: self.z_orbits,
            spectrum: self.spectrum.clone(),
        }
        .normalize()
    }

    /// `p ∨ q`: `p` and `q` acting side by side on two copies of ω.
    pub fn join(&self, other: &PermPresentation) -> PermPresentation {
        let mut spectrum = self.spectrum.clone();
        spectrum.extend_from_slice(&other.spectrum);
        PermPresentation {
            n_orbits: self.n_orbits + other.n_orbits,
            bn_orbits: self.bn_orbits + other.bn_orbits,
            z_orbits: self.z_orbits + other.z_orbits,
            spectrum,
        }
        .normalize()
    }

    /// Normal form with the finitely many cycles removed. Two presentations
    /// with equal star forms induce the same map on ω*.
    pub fn star_form(&self) -> PermPresentation {
        let mut p = self.normalize();
        p.spectrum.retain(CycleFamily::is_infinite);
        p
    }

    /// Has an infinite family of cycles (so the set acted on by the cyclic part is infinite).
    pub fn has_infinite_cyclic_part(&self) -> bool {
        !self.is_acyclic()
    }

    /// Periods of the infinite `Fixed` families, when those are the only
    /// infinite families; `None` if some family has unbounded periods.
    pub fn bounded_periods(&self) -> Option<Vec<u64>> {
        let mut periods = Vec::new();
        for family in self.spectrum.iter().filter(|f| f.is_infinite()) {
            match family {
                CycleFamily::Fixed { period, .. } => periods.push(*period),
                _ => return None,
            }
        }
        Some(periods)
    }
}

fn canonical_spectrum(spectrum: &[CycleFamily]) -> Vec<CycleFamily> {
    let mut merged: Vec<CycleFamily> = Vec::with_capacity(spectrum.len());
    let mut sorted = spectrum.to_vec();
    sorted.sort();
    for family in sorted {
        match (merged.last_mut(), family) {
            (
                Some(CycleFamily::Fixed { period: p, mult: m }),
                CycleFamily::Fixed { period, mult },
            ) if *p == period => *m = *m + mult,
            _ => merged.push(family),
        }
    }
    merged.retain(|f| !matches!(f, CycleFamily::Fixed { mult, .. } if mult.is_zero()));
    merged
}

impl fmt::Display for PermPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(n={}, bn={}, z={}, [",
            self.n_orbits, self.bn_orbits, self.z_orbits
        )?;
        for (i, family) in self.spectrum.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{family}")?;
        }
        f.write_str("])")
    }
}
