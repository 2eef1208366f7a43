//! Permutation universality of words.
//!
//! - [`words`]: words, permutations, greedy subsequence matching.
//! - [`universality`]: exact universality decider, witnesses, all-words
//!   (k-)universality, shortest universal words.
//! - [`lcp`]: Locally Constrained Permutation instances, solver and
//!   completion of free gaps.
//! - [`reductions`]: 3-SAT → LCP → word, with witness mappings.
//! - [`matching`]: bipartite matching with restricted vertices.
//! - [`gen`]: seeded instance generators.

mod error;
mod limits;
mod text;

pub mod gen;
pub mod lcp;
pub mod matching;
pub mod reductions;
pub mod universality;
pub mod words;

pub use error::{Error, Result};
pub use limits::Limits;
pub use words::{Permutation, Word};
