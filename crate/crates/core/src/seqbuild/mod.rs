//! Indexed sequences of states that approximately follow an index map
//! (pseudo-orbits), with builders for the standard constructions and
//! verifiers that measure how well a sequence tracks its rules.
//!
//! Everything works on finite windows of the infinite index sets. "For all
//! but finitely many indices" is read as "from some canonical position of
//! the window on"; see [`ViolationReport::tail_ok_from`].

mod build;
mod extract;
mod index;
mod sequence;
mod verify;

use thiserror::Error;

pub use build::{build_group_like, build_r_like, build_s_like, build_t_like, Construction};
pub use extract::{extract_chain, extract_self_chain};
pub use index::{
    default_rules, factorial, ActionRule, GroupKind, Index, IndexScheme, Window, Word, MAX_FACTORIAL_ROW,
};
pub use sequence::IndexedSequence;
pub use verify::{tail_dense_check, verify_p_like, verify_phi_like, Violation, ViolationReport};

use crate::chaindyn::ChainError;
use crate::system::SystemError;

#[derive(Debug, Error)]
pub enum SeqError {
    #[error("invalid window: {0}")]
    BadScheme(String),
    #[error("invalid index {0}")]
    BadIndex(String),
    #[error("unknown rule `{0}`")]
    BadRule(String),
    #[error("rule {rule} does not act on {scheme} windows")]
    RuleMismatch { rule: String, scheme: String },
    #[error("sequence has {got} entries, window has {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("dense sequence is empty")]
    EmptyDense,
    #[error("invalid eps schedule: {0}")]
    BadSchedule(String),
    #[error("map of {0} is not a bijection")]
    NotBijective(String),
    #[error("map is not surjective: {0} has no preimage")]
    NotSurjective(String),
    #[error("generator maps do not satisfy the group relations: {0}")]
    NotAnAction(String),
    #[error("no chain from {from} to {to} at eps={eps}")]
    NoChain { from: String, to: String, eps: String },
    #[error("not found within the window: {0}")]
    NotFound(String),
    #[error("prefix {prefix} leaves nothing of a window of {len} entries")]
    PrefixTooLong { prefix: usize, len: usize },
    #[error(transparent)]
    Chain(#[from] ChainError),
    #[error(transparent)]
    System(#[from] SystemError),
    #[error("{0}")]
    Json(#[from] serde_json::Error),
}
