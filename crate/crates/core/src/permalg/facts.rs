//! Axiom-tagged table of quotient relations between catalog maps.
//!
//! A relation `source ↠ target` asks whether `target*` is a quotient of
//! `source*` (dually, `target↑` embeds in `source↑`). Answers come from a
//! short list of specific recorded facts plus general rules keyed on the
//! invariants of the two presentations. Every rule that fires contributes a
//! piece of evidence; [`known_relation`] picks the answer usable in the
//! requested theory, preferring ZFC evidence.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::catalog::{catalog, CatalogName};
use super::classify::{is_chain_recurrent_star, is_chain_transitive_star, is_universal_ch};
use super::{cite, AxiomTag, PermError, PermPresentation, Status, Verdict};
use num_integer::Integer;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Relation {
    /// A continuous equivariant surjection.
    Quotient,
    /// A continuous equivariant map, not necessarily onto.
    Subquotient,
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Relation::Quotient => "quotient",
            Relation::Subquotient => "subquotient",
        })
    }
}

impl FromStr for Relation {
    type Err = PermError;

    fn from_str(s: &str) -> Result<Self, PermError> {
        match s {
            "quotient" => Ok(Relation::Quotient),
            "subquotient" => Ok(Relation::Subquotient),
            other => Err(PermError::UnknownName(other.to_string())),
        }
    }
}

/// One recorded result about a specific pair.
#[derive(Clone, Copy, Debug)]
pub struct Fact {
    pub source: CatalogName,
    pub target: CatalogName,
    pub relation: Relation,
    pub status: Status,
    pub axiom: AxiomTag,
    pub citation: &'static str,
}

const fn fact(
    source: CatalogName,
    target: CatalogName,
    relation: Relation,
    status: Status,
    axiom: AxiomTag,
    citation: &'static str,
) -> Fact {
    Fact {
        source,
        target,
        relation,
        status,
        axiom,
        citation,
    }
}

use AxiomTag::{Ch, OcaMa, Zfc};
use CatalogName::{SInv, TJoinR, R, S, Z};
use Relation::{Quotient, Subquotient};

/// Specific pairs settled by name.
pub const FACTS: &[Fact] = &[
    fact(S, SInv, Quotient, Status::Holds, Ch, cite::SHIFT_INVERSE_QUOTIENT),
    fact(SInv, S, Quotient, Status::Holds, Ch, cite::INVERSE_QUOTIENT),
    fact(S, SInv, Quotient, Status::Fails, OcaMa, cite::SHIFT_INVERSE_NOT_QUOTIENT),
    fact(SInv, S, Quotient, Status::Fails, OcaMa, cite::SHIFT_INVERSE_NOT_QUOTIENT),
    fact(Z, S, Quotient, Status::Holds, Zfc, cite::Z_ONTO_SHIFTS),
    fact(Z, SInv, Quotient, Status::Holds, Zfc, cite::Z_ONTO_SHIFTS),
    fact(R, S, Quotient, Status::Fails, OcaMa, cite::CYCLIC_NO_SHIFT_QUOTIENTS),
    fact(R, SInv, Quotient, Status::Fails, OcaMa, cite::CYCLIC_NO_SHIFT_QUOTIENTS),
];

/// Pairs whose answer is an open question, by relation and theory.
const OPEN: &[(CatalogName, CatalogName, Relation, &str)] = &[
    (R, S, Subquotient, cite::OPEN_SUBQUOTIENT_R_TO_S),
    (R, SInv, Subquotient, cite::OPEN_SUBQUOTIENT_R_TO_S),
];

/// Looks up `source ↠ target` (or the subquotient relation) in the theory `axiom`.
pub fn known_relation(
    source: CatalogName,
    target: CatalogName,
    relation: Relation,
    axiom: AxiomTag,
) -> Verdict {
    let evidence = relation_evidence(source, target, relation);
    let usable = |v: &&Verdict| v.axiom.usable_in(axiom);
    if let Some(v) = evidence.iter().filter(usable).find(|v| v.axiom == Zfc) {
        return v.clone();
    }
    if let Some(v) = evidence.iter().find(usable) {
        return v.clone();
    }
    if axiom == Zfc {
        let ch = known_relation(source, target, relation, Ch);
        let oca = known_relation(source, target, relation, OcaMa);
        if ch.is_decisive() && oca.is_decisive() && ch.status != oca.status {
            return Verdict::independent(&ch, &oca);
        }
    }
    open_question(source, target, relation, axiom)
}

/// String front end; rejects names outside the catalog.
pub fn known_relation_by_name(
    source: &str,
    target: &str,
    relation: Relation,
    axiom: AxiomTag,
) -> Result<Verdict, PermError> {
    Ok(known_relation(
        CatalogName::parse(source, None)?,
        target.parse()?,
        relation,
        axiom,
    ))
}

fn open_question(source: CatalogName, target: CatalogName, relation: Relation, axiom: AxiomTag) -> Verdict {
    let listed = OPEN
        .iter()
        .find(|(s, t, r, _)| *s == source && *t == target && *r == relation)
        .map(|(_, _, _, key)| *key);
    if let Some(key) = listed {
        return Verdict::open(axiom, key);
    }
    // (t∨r)* onto an acyclic map is exactly what universality of (t∨r)↑ needs.
    if relation == Quotient && source == TJoinR {
        if let Ok(q) = catalog(&target) {
            if q.is_acyclic() {
                return Verdict::open(axiom, cite::OPEN_T_JOIN_R_UNIVERSAL);
            }
        }
    }
    Verdict::open(axiom, cite::OPEN_UNRECORDED)
}

/// Every decisive verdict some recorded fact or rule gives for the pair,
/// regardless of theory. A consistent table never yields two of these that
/// contradict each other.
pub fn relation_evidence(source: CatalogName, target: CatalogName, relation: Relation) -> Vec<Verdict> {
    let mut evidence = quotient_evidence(source, target);
    if source != source.inverse() || target != target.inverse() {
        // p* ↠ q* iff (p⁻¹)* ↠ (q⁻¹)*: invert the quotient map's domain and range dynamics.
        for v in quotient_evidence(source.inverse(), target.inverse()) {
            if !evidence.contains(&v) {
                evidence.push(v);
            }
        }
    }
    match relation {
        Quotient => evidence,
        Subquotient => {
            let mut sub: Vec<Verdict> = evidence
                .into_iter()
                .filter(|v| v.status == Status::Holds)
                .collect();
            if let (Ok(p), true) = (catalog(&source), target != CatalogName::U) {
                if p.is_acyclic() {
                    sub.push(Verdict::holds(Zfc, cite::SUBQUOTIENT_FROM_ACYCLIC));
                }
            }
            sub
        }
    }
}

fn quotient_evidence(source: CatalogName, target: CatalogName) -> Vec<Verdict> {
    let mut out: Vec<Verdict> = FACTS
        .iter()
        .filter(|f| f.source == source && f.target == target && f.relation == Quotient)
        .map(|f| Verdict {
            status: f.status,
            axiom: f.axiom,
            provenance: f.citation.to_string(),
        })
        .collect();

    if source == target {
        out.push(Verdict::holds(Zfc, cite::SAME_MAP));
    }
    match (catalog(&source), catalog(&target)) {
        (Err(_), _) => {
            // u* is universal for all dynamical systems of weight at most c.
            out.push(Verdict::holds(Ch, cite::U_UNIVERSAL));
        }
        (Ok(_), Err(_)) => {
            // p* is onto ω* while u* is not; quotients of surjections are surjections.
            out.push(Verdict::fails(Zfc, cite::QUOTIENTS_PRESERVE_SURJECTIVITY));
        }
        (Ok(p), Ok(q)) => out.extend(presentation_rules(&p, &q)),
    }
    out
}

fn is_t_like(p: &PermPresentation) -> bool {
    let p = p.star_form();
    p.n_orbits == 0 && p.bn_orbits == 0 && p.z_orbits.is_omega() && p.spectrum.is_empty()
}

/// Only cycles, infinitely many of them, pan-divisible: behaves like r.
fn is_r_like(p: &PermPresentation) -> bool {
    p.is_cyclic() && p.has_infinite_cyclic_part() && p.is_pan_divisible()
}

/// Infinitely many ℤ-orbits, no one-sided orbits, and an r-like cyclic part.
fn is_t_join_r_like(p: &PermPresentation) -> bool {
    let p = p.star_form();
    p.n_orbits == 0
        && p.bn_orbits == 0
        && p.z_orbits.is_omega()
        && p.has_infinite_cyclic_part()
        && p.is_pan_divisible()
}

fn presentation_rules(p: &PermPresentation, q: &PermPresentation) -> Vec<Verdict> {
    let mut out = Vec::new();
    let holds = |v: Verdict| v.status == Status::Holds;

    if p.star_form() == q.star_form() {
        out.push(Verdict::holds(Zfc, cite::SAME_MAP));
    }

    // Chain transitivity and chain recurrence pass to quotients.
    let rec_p = holds(is_chain_recurrent_star(p));
    let rec_q = holds(is_chain_recurrent_star(q));
    let trans_p = holds(is_chain_transitive_star(p));
    let trans_q = holds(is_chain_transitive_star(q));
    if (rec_p && !rec_q) || (trans_p && !trans_q) {
        out.push(Verdict::fails(Zfc, cite::QUOTIENTS_PRESERVE_CHAIN));
    }

    // (p*)^L = id passes to every quotient.
    if p.is_cyclic() && p.has_infinite_cyclic_part() {
        if let Some(periods) = p.bounded_periods() {
            let bound = periods.iter().fold(1u64, |acc, &k| acc.lcm(&k));
            let q_periods = if q.is_cyclic() { q.bounded_periods() } else { None };
            match q_periods {
                Some(qp) if qp.iter().all(|m| bound % m == 0) => {
                    let every_p_lands = periods.iter().all(|k| qp.iter().any(|m| k % m == 0));
                    let every_q_hit = qp.iter().all(|m| periods.iter().any(|k| k % m == 0));
                    if every_p_lands && every_q_hit && !qp.is_empty() {
                        out.push(Verdict::holds(Zfc, cite::CYCLIC_COLLAPSE));
                    }
                }
                _ => out.push(Verdict::fails(Zfc, cite::BOUNDED_PERIOD)),
            }
        }
    }

    if is_t_like(p) && q.is_acyclic() {
        out.push(Verdict::holds(Zfc, cite::ACYCLIC_EMBEDS_T));
    }
    if is_r_like(p) && q.is_cyclic() && q.has_infinite_cyclic_part() {
        out.push(Verdict::holds(Zfc, cite::CYCLIC_EMBEDS_R));
    }
    if is_t_join_r_like(p) && !q.is_acyclic() {
        out.push(Verdict::holds(Zfc, cite::JOINT_UNIVERSAL_PAIR));
    }

    // CH
    if holds(is_universal_ch(p)) {
        out.push(Verdict::holds(Ch, cite::CLASSIFICATION));
    }
    if is_r_like(p) && rec_q {
        out.push(Verdict::holds(Ch, cite::R_UNIVERSAL_RECURRENT));
    }
    if trans_p && trans_q {
        out.push(Verdict::holds(Ch, cite::S_UNIVERSAL_TRANSITIVE));
    }
    if q.star_form() == p.inverse().star_form() {
        out.push(Verdict::holds(Ch, cite::INVERSE_QUOTIENT));
    }

    // OCA+MA
    if is_t_like(p) && !q.is_acyclic() {
        out.push(Verdict::fails(OcaMa, cite::T_NO_CYCLIC_QUOTIENTS));
    }
    if is_r_like(p) && !q.is_cyclic() {
        out.push(Verdict::fails(OcaMa, cite::R_EMBEDS_ONLY_CYCLIC));
    }
    let qn = q.normalize();
    if p.is_cyclic() && qn.n_orbits + qn.bn_orbits > 0 {
        out.push(Verdict::fails(OcaMa, cite::CYCLIC_NO_SHIFT_QUOTIENTS));
    }
    if q.index() > p.index() {
        out.push(Verdict::fails(OcaMa, cite::INDEX_MONOTONE));
    }

    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rel(p: &str, q: &str, relation: Relation, ax: AxiomTag) -> Verdict {
        known_relation_by_name(p, q, relation, ax).unwrap()
    }

    #[test]
    fn recorded_examples() {
        let v = rel("s", "s_inv", Quotient, Ch);
        assert_eq!(v.status, Status::Holds);
        assert_eq!(v.provenance, cite::SHIFT_INVERSE_QUOTIENT);
        assert_eq!(rel("s_inv", "s", Quotient, OcaMa).status, Status::Fails);
        let open = rel("r", "s", Subquotient, Zfc);
        assert_eq!(open.status, Status::Unknown);
        assert_eq!(open.provenance, cite::OPEN_SUBQUOTIENT_R_TO_S);
    }

    #[test]
    fn general_rules() {
        assert_eq!(rel("z", "s", Quotient, Zfc).status, Status::Holds);
        assert_eq!(rel("r", "t", Quotient, Ch).status, Status::Fails);
        assert_eq!(rel("t", "r", Quotient, Ch).status, Status::Holds);
        assert_eq!(rel("t", "r", Quotient, OcaMa).status, Status::Fails);
        assert!(rel("t", "r", Quotient, Zfc).provenance.starts_with("independent:"));
        assert_eq!(rel("u", "t", Quotient, Ch).status, Status::Holds);
        assert_eq!(rel("t", "u", Quotient, Ch).status, Status::Fails);
        assert_eq!(rel("c_6", "c_2", Quotient, Zfc).status, Status::Holds);
        assert_eq!(rel("c_2", "c_6", Quotient, Zfc).status, Status::Fails);
        assert_eq!(rel("c_2", "r", Quotient, Ch).status, Status::Fails);
        assert_eq!(rel("s_join_s_inv", "z", Quotient, Zfc).status, Status::Holds);
        assert_eq!(rel("t_join_r", "t", Quotient, OcaMa).provenance, cite::OPEN_T_JOIN_R_UNIVERSAL);
        assert_eq!(rel("s", "t", Subquotient, Zfc).status, Status::Holds);
    }

    #[test]
    fn answers_respect_the_requested_theory() {
        for p in CatalogName::standard() {
            for q in CatalogName::standard() {
                for relation in [Quotient, Subquotient] {
                    for ax in [Zfc, Ch, OcaMa] {
                        let v = known_relation(p, q, relation, ax);
                        assert!(v.axiom.usable_in(ax) || v.axiom == ax, "{p} {q} {ax}: {v}");
                        assert!(v.is_well_formed(), "{p} {q}: {v}");
                    }
                }
            }
        }
    }

    #[test]
    fn unknown_names_are_rejected() {
        assert!(matches!(
            known_relation_by_name("w", "s", Quotient, Zfc),
            Err(PermError::UnknownName(_))
        ));
    }
}
