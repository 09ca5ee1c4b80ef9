//! Presentations of mod-finite permutations of ω and what is known about
//! the automorphisms of ω* they induce.

mod catalog;
pub mod cite;
mod classify;
mod facts;
mod presentation;
mod verdict;

use thiserror::Error;

pub use catalog::{catalog, named, CatalogName};
pub use classify::{
    embeds_in, is_chain_recurrent_star, is_chain_transitive_star, is_universal_ch,
    jointly_universal_witness, quotient_necessary_delta, EmbedTarget,
};
pub use facts::{known_relation, known_relation_by_name, relation_evidence, Fact, Relation, FACTS};
pub use presentation::{CycleFamily, PermPresentation};
pub use verdict::{AxiomTag, Status, Verdict, INDEPENDENT_PREFIX, OPEN_PREFIX};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PermError {
    #[error("invalid cycle family: {0}")]
    InvalidFamily(String),
    #[error("catalog name `{0}` needs a parameter")]
    MissingParameter(String),
    #[error("unknown name `{0}`")]
    UnknownName(String),
    #[error("`{0}` is not a permutation")]
    NotAPermutation(String),
}
