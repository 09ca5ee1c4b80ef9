use std::fmt;

use serde::{Deserialize, Serialize};

/// The set-theoretic hypothesis under which a verdict is a theorem.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum AxiomTag {
    #[serde(rename = "ZFC")]
    Zfc,
    #[serde(rename = "CH")]
    Ch,
    #[serde(rename = "OCA_MA")]
    OcaMa,
}

impl AxiomTag {
    /// A theorem proved under `self` may be quoted in the `context` theory.
    /// ZFC results hold everywhere; CH and OCA+MA contradict each other.
    pub fn usable_in(self, context: AxiomTag) -> bool {
        self == AxiomTag::Zfc || self == context
    }

    pub fn parse(s: &str) -> Option<AxiomTag> {
        match s.trim().to_ascii_uppercase().as_str() {
            "ZFC" => Some(AxiomTag::Zfc),
            "CH" => Some(AxiomTag::Ch),
            "OCA_MA" | "OCA+MA" | "OCA-MA" => Some(AxiomTag::OcaMa),
            _ => None,
        }
    }
}

impl fmt::Display for AxiomTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AxiomTag::Zfc => "ZFC",
            AxiomTag::Ch => "CH",
            AxiomTag::OcaMa => "OCA+MA",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Holds,
    Fails,
    Unknown,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Holds => "holds",
            Status::Fails => "fails",
            Status::Unknown => "unknown",
        })
    }
}

/// Prefix for provenance of an `unknown` verdict that the theory leaves open.
pub const OPEN_PREFIX: &str = "open:";
/// Prefix for provenance of an `unknown` verdict that is settled one way
/// under CH and the other way under OCA+MA.
pub const INDEPENDENT_PREFIX: &str = "independent:";

/// An answer to a classification question, tagged with the axioms it needs.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Verdict {
    pub status: Status,
    pub axiom: AxiomTag,
    pub provenance: String,
}

impl Verdict {
    pub fn holds(axiom: AxiomTag, provenance: impl Into<String>) -> Self {
        Verdict {
            status: Status::Holds,
            axiom,
            provenance: provenance.into(),
        }
    }

    pub fn fails(axiom: AxiomTag, provenance: impl Into<String>) -> Self {
        Verdict {
            status: Status::Fails,
            axiom,
            provenance: provenance.into(),
        }
    }

    pub fn from_bool(value: bool, axiom: AxiomTag, provenance: impl Into<String>) -> Self {
        if value {
            Verdict::holds(axiom, provenance)
        } else {
            Verdict::fails(axiom, provenance)
        }
    }

    /// An unresolved verdict. `question` names the open question; the
    /// `open:` prefix is added when missing.
    pub fn open(axiom: AxiomTag, question: &str) -> Self {
        let provenance = if question.starts_with(OPEN_PREFIX) {
            question.to_string()
        } else {
            format!("{OPEN_PREFIX}{question}")
        };
        Verdict {
            status: Status::Unknown,
            axiom,
            provenance,
        }
    }

    /// Unknown in ZFC because CH and OCA+MA decide it differently.
    pub fn independent(ch: &Verdict, oca: &Verdict) -> Self {
        Verdict {
            status: Status::Unknown,
            axiom: AxiomTag::Zfc,
            provenance: format!(
                "{INDEPENDENT_PREFIX}{} under CH ({}), {} under OCA+MA ({})",
                ch.status, ch.provenance, oca.status, oca.provenance
            ),
        }
    }

    pub fn is_decisive(&self) -> bool {
        self.status != Status::Unknown
    }

    /// Two verdicts contradict when both are decisive, disagree, and their
    /// axiom tags can be used together.
    pub fn contradicts(&self, other: &Verdict) -> bool {
        self.is_decisive()
            && other.is_decisive()
            && self.status != other.status
            && (self.axiom.usable_in(other.axiom) || other.axiom.usable_in(self.axiom))
    }

    /// Well-formed: an unknown verdict names an open or independent question.
    pub fn is_well_formed(&self) -> bool {
        self.status != Status::Unknown
            || self.provenance.starts_with(OPEN_PREFIX)
            || self.provenance.starts_with(INDEPENDENT_PREFIX)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [{}; {}]", self.status, self.axiom, self.provenance)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn axiom_usability() {
        assert!(AxiomTag::Zfc.usable_in(AxiomTag::Ch));
        assert!(AxiomTag::Zfc.usable_in(AxiomTag::OcaMa));
        assert!(!AxiomTag::Ch.usable_in(AxiomTag::OcaMa));
        assert!(!AxiomTag::Ch.usable_in(AxiomTag::Zfc));
    }

    #[test]
    fn contradictions_respect_axioms() {
        let ch = Verdict::holds(AxiomTag::Ch, "a");
        let oca = Verdict::fails(AxiomTag::OcaMa, "b");
        let zfc = Verdict::fails(AxiomTag::Zfc, "c");
        assert!(!ch.contradicts(&oca));
        assert!(ch.contradicts(&zfc));
        assert!(!ch.contradicts(&Verdict::open(AxiomTag::Ch, "q")));
    }

    #[test]
    fn unknown_names_a_question() {
        let v = Verdict::open(AxiomTag::Zfc, "subquotient-r-to-s");
        assert_eq!(v.provenance, "open:subquotient-r-to-s");
        assert!(v.is_well_formed());
        let bad = Verdict {
            status: Status::Unknown,
            axiom: AxiomTag::Zfc,
            provenance: "whatever".into(),
        };
        assert!(!bad.is_well_formed());
    }

    #[test]
    fn json_tags() {
        let v = Verdict::holds(AxiomTag::OcaMa, "x");
        let text = serde_json::to_string(&v).unwrap();
        assert_eq!(text, r#"{"status":"holds","axiom":"OCA_MA","provenance":"x"}"#);
        assert_eq!(serde_json::from_str::<Verdict>(&text).unwrap(), v);
    }
}
