//! Finite and combinatorial tools for the dynamics of maps on ω*.
//!
//! - [`permalg`]: presentations of mod-finite permutations and their classification.
//! - [`chaindyn`]: chain transitivity and chain recurrence of finite systems.
//! - [`seqbuild`]: indexed sequences whose ultrafilter limits realize a given map.
//! - [`quotients`]: equivariant maps between finite systems.

pub mod count;
pub mod permalg;
pub mod system;
pub mod chaindyn;
pub mod seqbuild;
pub mod quotients;
pub mod cli;
