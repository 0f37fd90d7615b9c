use thiserror::Error;

pub type Result<T> = std::result::Result<T, AdeError>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AdeError {
    #[error("unsupported diagram: {0}")]
    UnsupportedDiagram(String),

    #[error("cannot parse diagram name {0:?} (expected e.g. \"E6\", \"A11\", \"D4\")")]
    ParseDiagram(String),

    /// The graph does not carry a fusion algebra with nonnegative integer
    /// structure constants (E7, D_odd).
    #[error("no positive hypergroup for {graph}: {reason}")]
    NoPositiveHypergroup { graph: String, reason: String },

    #[error("ambichiral subalgebra not defined for this family in this artifact ({0})")]
    AmbichiralUndefined(String),

    #[error("vertex index {index} out of range for {graph} (rank {rank})")]
    InvalidVertex {
        graph: String,
        index: usize,
        rank: usize,
    },

    #[error("path length {length} exceeds the configured cap {cap}")]
    LengthCap { length: usize, cap: usize },

    /// A computed quantity violated an invariant that must hold for the
    /// supported diagrams.
    #[error("internal consistency error: {0}")]
    Consistency(String),

    /// The quotient construction or a quantity defined on it is ill-defined.
    #[error("structural error: {0}")]
    Structure(String),
}
