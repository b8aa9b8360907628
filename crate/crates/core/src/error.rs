use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Operands built by different algebra instances were combined.
    #[error("predicates belong to different algebra instances")]
    AlgebraMismatch,

    /// A character outside the algebra's domain was used.
    #[error("character out of domain: {0}")]
    OutOfDomain(u64),

    /// `witness` was called on an unsatisfiable predicate.
    #[error("witness requested for an unsatisfiable predicate")]
    UnsatWitness,

    /// A formula references a state index outside the automaton.
    #[error("state index {0} out of range (automaton has {1} states)")]
    StateIndex(u32, u32),

    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("unsupported regex construct: {0}")]
    UnsupportedRegex(String),

    /// Input does not have the requested shape (e.g. not s-FA convertible).
    #[error("{0}")]
    Shape(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}
