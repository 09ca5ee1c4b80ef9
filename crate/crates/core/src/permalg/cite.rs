//! Citation keys attached to verdicts.
//!
//! Decisive keys name the result a verdict rests on. Keys starting with
//! `open:` name a question the theory leaves unresolved.

pub const CLASSIFICATION: &str = "classification";
pub const CHAIN_TRANSITIVE_TRIVIAL: &str = "only-shifts-chain-transitive";
pub const INDEX_RECURRENCE: &str = "index-recurrence";
pub const INDEX_MONOTONE: &str = "index-monotone";
pub const ACYCLIC_EMBEDS_T: &str = "acyclic-embeds-in-t";
pub const T_EMBEDS_ONLY_ACYCLIC: &str = "t-embeds-only-acyclic";
pub const CYCLIC_EMBEDS_R: &str = "cyclic-embeds-in-r";
pub const R_EMBEDS_ONLY_CYCLIC: &str = "r-embeds-only-cyclic";
pub const JOINT_UNIVERSAL_PAIR: &str = "jointly-universal-pair";
pub const T_UNIVERSAL: &str = "t-universal";
pub const R_UNIVERSAL_RECURRENT: &str = "r-universal-chain-recurrent";
pub const S_UNIVERSAL_TRANSITIVE: &str = "s-universal-chain-transitive";
pub const SHIFT_INVERSE_QUOTIENT: &str = "shift-inverse-quotient";
pub const INVERSE_QUOTIENT: &str = "quotient-of-inverse";
pub const SHIFT_INVERSE_NOT_QUOTIENT: &str = "shift-inverse-not-quotient";
pub const T_NO_CYCLIC_QUOTIENTS: &str = "t-no-cyclic-quotients";
pub const CYCLIC_NO_SHIFT_QUOTIENTS: &str = "cyclic-no-shift-quotients";
pub const Z_ONTO_SHIFTS: &str = "z-onto-shifts";
pub const U_UNIVERSAL: &str = "u-universal";
pub const QUOTIENTS_PRESERVE_CHAIN: &str = "quotients-preserve-chain-properties";
pub const QUOTIENTS_PRESERVE_SURJECTIVITY: &str = "quotients-preserve-surjectivity";
pub const BOUNDED_PERIOD: &str = "bounded-period";
pub const CYCLIC_COLLAPSE: &str = "cyclic-collapse";
pub const SAME_MAP: &str = "same-induced-map";
pub const INVERSE_SYMMETRY: &str = "invert-both-sides";
pub const SUBQUOTIENT_FROM_ACYCLIC: &str = "subquotient-from-z";
pub const QUOTIENT_IS_SUBQUOTIENT: &str = "quotient-is-subquotient";

pub const OPEN_SUBQUOTIENT_R_TO_S: &str = "open:subquotient-r-to-s";
pub const OPEN_T_JOIN_R_UNIVERSAL: &str = "open:t-join-r-universal";
pub const OPEN_SHIFT_ISO_INVERSE: &str = "open:shift-isomorphic-to-inverse";
pub const OPEN_EVERY_AUTOMORPHISM_TRIVIAL_EMBED: &str = "open:every-automorphism-embeds-in-trivial";
pub const OPEN_INDEX_SUFFICIENCY: &str = "open:index-condition-only-necessary";
pub const OPEN_UNRECORDED: &str = "open:unrecorded";
