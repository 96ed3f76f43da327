//! Formula files shipped with the crate.

use super::parser::{parse_definitions, parse_formula, Vocabulary};
use super::Formula;
use crate::error::Result;

pub const SPLIT_INTERVAL_SOURCE: &str = include_str!("../../formulas/split_interval.fo");
pub const PERMUTATION_SOURCE: &str = include_str!("../../formulas/permutation.fo");

/// `E` plus `nu`, `eta`, `mu_nu`, `mu_eta` and `phi`.
pub fn split_interval_vocabulary() -> Result<Vocabulary> {
    parse_definitions(SPLIT_INTERVAL_SOURCE, &Vocabulary::graph())
}

/// `E`, the side predicates `A` and `B`, and the orders `lt1`, `lt2`.
pub fn permutation_vocabulary() -> Result<Vocabulary> {
    parse_definitions(
        PERMUTATION_SOURCE,
        &Vocabulary::graph().with_predicates(["A", "B"]),
    )
}

/// Expands a named definition applied to the given variables.
pub fn instantiate(vocab: &Vocabulary, name: &str, vars: &[&str]) -> Result<Formula> {
    parse_formula(&format!("{name}({})", vars.join(",")), vocab)
}
