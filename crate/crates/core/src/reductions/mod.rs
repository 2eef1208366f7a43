//! Constructive reductions 3-SAT → LCP → word, with witness mappings.

mod cnf;
mod layout;
mod sat;
mod word;

pub use cnf::{Assignment, Clause, CnfFormula, Literal};
pub use layout::{Comparison, LiteralCell, ReductionLayout};
pub use sat::{
    cell_state, embed_assignment, extract_assignment, prefix_increasing_normal_form, read_assignment, sat_to_lcp,
    CellState, PipNormalForm,
};
pub use word::{enc, expected_word_length, lcp_to_word, ord, sat_to_word, SatWord};

#[cfg(test)]
mod tests;
