use thiserror::Error;

/// Every failure the toolkit can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// The input document is malformed (bad JSON, bad DOT, missing keys).
    #[error("schema error: {0}")]
    Schema(String),

    /// The document parsed but violates a model invariant.
    #[error("model error: {0}")]
    Model(String),

    #[error("nondeterministic machine: vertex `{vertex}` has more than one transition on input `{input}`")]
    Determinism { vertex: String, input: String },

    #[error("unknown edge id `{0}`")]
    UnknownEdge(String),

    #[error("invalid path: {0}")]
    InvalidPath(String),

    #[error("graph contains a cycle, so the number of possible paths is infinite")]
    CyclicGraph,

    #[error("every edge must carry an input/output label for the W-method")]
    MealyLabelsMissing,

    #[error("states `{0}` and `{1}` cannot be distinguished by any input sequence")]
    IndistinguishableStates(String, String),

    #[error("criterion {criterion} is not applicable: {reason}")]
    CriterionInapplicable { criterion: String, reason: String },

    #[error("unsatisfiable: {0}")]
    Unsatisfiable(String),

    #[error("resource limit exceeded: {0}")]
    Resource(String),

    #[error("no relation entry for pair ({0}, {1})")]
    UnknownPair(String, String),

    #[error("configuration error: {0}")]
    Config(String),
}

pub type Result<T> = std::result::Result<T, Error>;
