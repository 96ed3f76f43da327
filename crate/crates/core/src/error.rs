use thiserror::Error;

use crate::graph::VertexId;

/// Errors raised by graph operations, lemma constructions and searches.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("capacity exceeded: {what} is {got}, limit {limit}")]
    Capacity {
        what: &'static str,
        got: usize,
        limit: usize,
    },

    /// `G * X` with `X` not independent; `step` is the 0-based position of the
    /// offending set inside a witness, `relation` the relation index for
    /// structure complementation.
    #[error("faulty complementation{}{}: {u} and {v} are adjacent", fmt_step(.step), fmt_rel(.relation))]
    FaultyComplementation {
        step: Option<usize>,
        relation: Option<usize>,
        u: VertexId,
        v: VertexId,
    },

    #[error("validation error: {0}")]
    Validation(String),

    #[error("parse error at {line}:{column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),

    #[error("evaluation error: {0}")]
    Evaluation(String),

    /// A postcondition that a construction guarantees did not hold.
    #[error("internal invariant violated: {0}")]
    InternalInvariant(String),
}

fn fmt_step(step: &Option<usize>) -> String {
    step.map(|s| format!(" at step {s}")).unwrap_or_default()
}

fn fmt_rel(rel: &Option<usize>) -> String {
    rel.map(|r| format!(" on relation {r}")).unwrap_or_default()
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }
}
