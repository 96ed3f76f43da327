//! First-order logic over binary structures.

mod ast;
mod eval;
pub mod library;
mod parser;
mod witness;

pub use ast::{Assignment, Formula, Var};
pub use eval::{evaluate, evaluate_with, satisfying_set, table, Evaluator, Limits};
pub use parser::{parse_definitions, parse_formula, Definition, Vocabulary};
pub use witness::{
    independence_witness, ladder_index, ladder_witness, pair_table, permutation_roundtrip,
    IndependenceWitness, MAX_INDEPENDENCE_N, MAX_LADDER_CAP,
};
