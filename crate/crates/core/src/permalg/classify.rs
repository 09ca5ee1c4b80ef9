//! Classification predicates on presentations. Each returns a [`Verdict`]
//! carrying the weakest axiom system under which the answer is a theorem.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{cite, AxiomTag, PermError, PermPresentation, Status, Verdict};

/// Universal automorphism under CH: infinitely many ℤ-orbits and pan-divisible.
pub fn is_universal_ch(p: &PermPresentation) -> Verdict {
    let p = p.normalize();
    Verdict::from_bool(
        p.z_orbits.is_omega() && p.is_pan_divisible(),
        AxiomTag::Ch,
        cite::CLASSIFICATION,
    )
}

/// `p*` is chain transitive: exactly one one-sided infinite orbit, no
/// ℤ-orbits and only finitely many cycles.
///
/// Infinitely many cycles next to the one-sided orbit are rejected.
pub fn is_chain_transitive_star(p: &PermPresentation) -> Verdict {
    let p = p.normalize();
    let one_sided = (p.n_orbits, p.bn_orbits) == (1, 0) || (p.n_orbits, p.bn_orbits) == (0, 1);
    Verdict::from_bool(
        one_sided && p.z_orbits.is_zero() && p.is_acyclic(),
        AxiomTag::Zfc,
        cite::CHAIN_TRANSITIVE_TRIVIAL,
    )
}

/// `p*` is chain recurrent iff δ(p) is finite.
pub fn is_chain_recurrent_star(p: &PermPresentation) -> Verdict {
    Verdict::from_bool(
        !p.index().is_omega(),
        AxiomTag::Zfc,
        cite::INDEX_RECURRENCE,
    )
}

/// Necessary condition for `p* ↠ q*` under OCA+MA: δ(q) ≤ δ(p).
/// Passing it proves nothing, so the answer is then `unknown`.
pub fn quotient_necessary_delta(p: &PermPresentation, q: &PermPresentation) -> Verdict {
    if q.index() > p.index() {
        Verdict::fails(AxiomTag::OcaMa, cite::INDEX_MONOTONE)
    } else {
        Verdict::open(AxiomTag::OcaMa, cite::OPEN_INDEX_SUFFICIENCY)
    }
}

/// The three lifted automorphisms that act as embedding targets.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EmbedTarget {
    TUp,
    RUp,
    TJoinRUp,
}

impl EmbedTarget {
    pub const ALL: [EmbedTarget; 3] = [EmbedTarget::TUp, EmbedTarget::RUp, EmbedTarget::TJoinRUp];
}

impl fmt::Display for EmbedTarget {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EmbedTarget::TUp => "t_up",
            EmbedTarget::RUp => "r_up",
            EmbedTarget::TJoinRUp => "t_join_r_up",
        })
    }
}

impl FromStr for EmbedTarget {
    type Err = PermError;

    fn from_str(s: &str) -> Result<Self, PermError> {
        match s {
            "t_up" | "t" => Ok(EmbedTarget::TUp),
            "r_up" | "r" => Ok(EmbedTarget::RUp),
            "t_join_r_up" | "t_join_r" => Ok(EmbedTarget::TJoinRUp),
            other => Err(PermError::UnknownName(other.to_string())),
        }
    }
}

/// Does `p↑` embed in the target automorphism, i.e. is `p*` a quotient of
/// the target's dual map, in the theory `axioms`?
///
/// Asking under ZFC returns an `independent:` unknown when CH and OCA+MA
/// decide the question in opposite ways.
pub fn embeds_in(p: &PermPresentation, target: EmbedTarget, axioms: AxiomTag) -> Verdict {
    let p = p.normalize();
    match axioms {
        AxiomTag::Zfc => {
            let zfc = embeds_zfc(&p, target);
            if zfc.is_decisive() {
                return zfc;
            }
            let ch = embeds_in(&p, target, AxiomTag::Ch);
            let oca = embeds_in(&p, target, AxiomTag::OcaMa);
            if ch.is_decisive() && oca.is_decisive() && ch.status != oca.status {
                Verdict::independent(&ch, &oca)
            } else {
                zfc
            }
        }
        context => {
            let zfc = embeds_zfc(&p, target);
            if zfc.is_decisive() {
                return zfc;
            }
            match context {
                AxiomTag::Ch => embeds_ch(&p, target),
                _ => embeds_oca(&p, target),
            }
        }
    }
}

fn embeds_zfc(p: &PermPresentation, target: EmbedTarget) -> Verdict {
    match target {
        EmbedTarget::TUp if p.is_acyclic() => Verdict::holds(AxiomTag::Zfc, cite::ACYCLIC_EMBEDS_T),
        EmbedTarget::RUp if p.is_cyclic() => Verdict::holds(AxiomTag::Zfc, cite::CYCLIC_EMBEDS_R),
        // r* is chain recurrent and quotients keep that; p* is not.
        EmbedTarget::RUp if p.index().is_omega() => {
            Verdict::fails(AxiomTag::Zfc, cite::QUOTIENTS_PRESERVE_CHAIN)
        }
        EmbedTarget::TJoinRUp if !p.is_acyclic() => {
            Verdict::holds(AxiomTag::Zfc, cite::JOINT_UNIVERSAL_PAIR)
        }
        EmbedTarget::TJoinRUp => Verdict::open(AxiomTag::Zfc, cite::OPEN_T_JOIN_R_UNIVERSAL),
        _ => Verdict::open(AxiomTag::Zfc, cite::OPEN_UNRECORDED),
    }
}

fn embeds_ch(p: &PermPresentation, target: EmbedTarget) -> Verdict {
    match target {
        EmbedTarget::TUp => Verdict::holds(AxiomTag::Ch, cite::T_UNIVERSAL),
        EmbedTarget::TJoinRUp => Verdict::holds(AxiomTag::Ch, cite::CLASSIFICATION),
        EmbedTarget::RUp => match is_chain_recurrent_star(p).status {
            Status::Holds => Verdict::holds(AxiomTag::Ch, cite::R_UNIVERSAL_RECURRENT),
            _ => Verdict::fails(AxiomTag::Zfc, cite::QUOTIENTS_PRESERVE_CHAIN),
        },
    }
}

fn embeds_oca(p: &PermPresentation, target: EmbedTarget) -> Verdict {
    match target {
        EmbedTarget::TUp => {
            Verdict::from_bool(p.is_acyclic(), AxiomTag::OcaMa, cite::T_EMBEDS_ONLY_ACYCLIC)
        }
        EmbedTarget::RUp => {
            Verdict::from_bool(p.is_cyclic(), AxiomTag::OcaMa, cite::R_EMBEDS_ONLY_CYCLIC)
        }
        EmbedTarget::TJoinRUp => Verdict::open(AxiomTag::OcaMa, cite::OPEN_T_JOIN_R_UNIVERSAL),
    }
}

/// Which of `t↑`, `(t∨r)↑` provably (in ZFC) receives `p↑`.
pub fn jointly_universal_witness(p: &PermPresentation) -> (EmbedTarget, Verdict) {
    if p.is_acyclic() {
        (EmbedTarget::TUp, embeds_zfc(p, EmbedTarget::TUp))
    } else {
        (EmbedTarget::TJoinRUp, embeds_zfc(p, EmbedTarget::TJoinRUp))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permalg::catalog::named;
    use crate::permalg::presentation::tests::any_presentation;
    use proptest::prelude::*;

    #[test]
    fn universality_examples() {
        assert_eq!(is_universal_ch(&named("t")).status, Status::Holds);
        assert_eq!(is_universal_ch(&named("r")).status, Status::Fails);
        assert_eq!(is_universal_ch(&named("t_join_r")).status, Status::Holds);
        assert_eq!(is_universal_ch(&named("t")).axiom, AxiomTag::Ch);
        let t_c3 = named("t").join(&named("c_3"));
        assert_eq!(is_universal_ch(&t_c3).status, Status::Fails);
    }

    #[test]
    fn chain_transitivity_examples() {
        assert_eq!(is_chain_transitive_star(&named("s")).status, Status::Holds);
        assert_eq!(is_chain_transitive_star(&named("s").inverse()).status, Status::Holds);
        assert_eq!(is_chain_transitive_star(&named("t")).status, Status::Fails);
        assert_eq!(is_chain_transitive_star(&named("z")).status, Status::Fails);
        // Finitely many extra cycles are invisible on ω*.
        let s_plus = named("s").join(&PermPresentation::new(0, 0, 0, vec![super::super::CycleFamily::fixed(3, 4)]).unwrap());
        assert_eq!(is_chain_transitive_star(&s_plus).status, Status::Holds);
        assert_eq!(is_chain_transitive_star(&named("s").join(&named("r"))).status, Status::Fails);
    }

    #[test]
    fn chain_recurrence_examples() {
        assert_eq!(is_chain_recurrent_star(&named("r")).status, Status::Holds);
        assert_eq!(is_chain_recurrent_star(&named("t")).status, Status::Fails);
        assert_eq!(is_chain_recurrent_star(&named("z")).status, Status::Holds);
    }

    #[test]
    fn delta_condition_examples() {
        assert_eq!(quotient_necessary_delta(&named("s"), &named("z")).status, Status::Fails);
        assert_eq!(quotient_necessary_delta(&named("t"), &named("z")).status, Status::Unknown);
        assert_eq!(quotient_necessary_delta(&named("t"), &named("t")).status, Status::Unknown);
        assert_eq!(quotient_necessary_delta(&named("z"), &named("s")).status, Status::Unknown);
        assert_eq!(quotient_necessary_delta(&named("s"), &named("z")).axiom, AxiomTag::OcaMa);
    }

    #[test]
    fn embedding_examples() {
        let v = embeds_in(&named("c_3"), EmbedTarget::RUp, AxiomTag::OcaMa);
        assert_eq!(v.status, Status::Holds);
        assert_eq!(v.axiom, AxiomTag::Zfc);
        assert_eq!(embeds_in(&named("r"), EmbedTarget::TUp, AxiomTag::OcaMa).status, Status::Fails);
        assert_eq!(embeds_in(&named("r"), EmbedTarget::TUp, AxiomTag::Ch).status, Status::Holds);
        let zfc = embeds_in(&named("r"), EmbedTarget::TUp, AxiomTag::Zfc);
        assert_eq!(zfc.status, Status::Unknown);
        assert!(zfc.provenance.starts_with("independent:"));
        assert_eq!(embeds_in(&named("s"), EmbedTarget::TJoinRUp, AxiomTag::Ch).status, Status::Holds);
        assert_eq!(embeds_in(&named("s"), EmbedTarget::TJoinRUp, AxiomTag::Zfc).status, Status::Unknown);
        assert_eq!(embeds_in(&named("r"), EmbedTarget::TJoinRUp, AxiomTag::Zfc).status, Status::Holds);
        assert_eq!(embeds_in(&named("t"), EmbedTarget::RUp, AxiomTag::Ch).status, Status::Fails);
        assert_eq!(embeds_in(&named("s"), EmbedTarget::RUp, AxiomTag::Ch).status, Status::Holds);
        assert_eq!(embeds_in(&named("s"), EmbedTarget::RUp, AxiomTag::OcaMa).status, Status::Fails);
    }

    #[test]
    fn joint_witness_is_always_zfc_holds() {
        for name in ["s", "s_inv", "r", "t", "z", "c_2", "t_join_r"] {
            let (_, v) = jointly_universal_witness(&named(name));
            assert_eq!(v.status, Status::Holds, "{name}");
            assert_eq!(v.axiom, AxiomTag::Zfc);
        }
    }

    proptest! {
        #[test]
        fn universal_implies_not_recurrent(p in any_presentation()) {
            if is_universal_ch(&p).status == Status::Holds {
                prop_assert!(p.index().is_omega());
                prop_assert_eq!(is_chain_recurrent_star(&p).status, Status::Fails);
            }
        }

        #[test]
        fn acyclicity_dichotomy(p in any_presentation()) {
            for axioms in [AxiomTag::Zfc, AxiomTag::OcaMa] {
                let holds = embeds_in(&p, EmbedTarget::TUp, axioms).status == Status::Holds;
                prop_assert!(holds ^ p.has_infinite_cyclic_part());
            }
        }

        #[test]
        fn verdicts_are_well_formed(p in any_presentation(), q in any_presentation()) {
            let mut all = vec![
                is_universal_ch(&p),
                is_chain_transitive_star(&p),
                is_chain_recurrent_star(&p),
                quotient_necessary_delta(&p, &q),
            ];
            for target in EmbedTarget::ALL {
                for ax in [AxiomTag::Zfc, AxiomTag::Ch, AxiomTag::OcaMa] {
                    let v = embeds_in(&p, target, ax);
                    prop_assert!(v.axiom.usable_in(ax));
                    all.push(v);
                }
            }
            for v in all {
                prop_assert!(v.is_well_formed(), "{}", v);
            }
        }

        #[test]
        fn classifiers_are_inverse_invariant(p in any_presentation()) {
            let inv = p.inverse();
            prop_assert_eq!(is_universal_ch(&p).status, is_universal_ch(&inv).status);
            prop_assert_eq!(is_chain_recurrent_star(&p).status, is_chain_recurrent_star(&inv).status);
            prop_assert_eq!(is_chain_transitive_star(&p).status, is_chain_transitive_star(&inv).status);
        }
    }
}
