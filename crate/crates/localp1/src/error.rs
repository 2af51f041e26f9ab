//! Error type shared by every module of the crate.

use thiserror::Error;

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;

/// Everything that can go wrong while building, transforming or evaluating
/// complexes.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("empty input: a complex needs at least one facet")]
    EmptyInput,
    #[error("facets of mixed dimension: expected {expected} vertices, found {found}")]
    MixedDimension { expected: usize, found: usize },
    #[error("repeated vertex {0} inside one simplex")]
    RepeatedVertex(u32),
    #[error("simplex {0:?} is not a face of the complex")]
    NotAFace(Vec<u32>),
    #[error("vertex {0} does not occur in the complex")]
    UnknownVertex(u32),
    #[error("complex is not a closed pseudomanifold: ridge {ridge:?} lies in {count} facets")]
    NotPseudomanifold { ridge: Vec<u32>, count: usize },
    #[error("complex is not orientable (contradiction at facet {0:?})")]
    NonOrientable(Vec<u32>),
    #[error("dimension {k} is out of range for a complex of dimension {dim}")]
    DimensionOutOfRange { k: usize, dim: usize },
    #[error("bistellar move sigma={sigma:?} tau={tau:?} is not applicable: {reason}")]
    NotApplicable {
        sigma: Vec<u32>,
        tau: Vec<u32>,
        reason: &'static str,
    },
    #[error("sphere reduction stalled after {moves} moves (input may not be a sphere)")]
    ReductionStalled { moves: usize },
    #[error("cycle decomposition failed: {0}")]
    DecompositionFailed(String),
    #[error("unknown elementary cycle kind `{0}`")]
    UnknownKind(String),
    #[error("vertex {0} never appears in the chain")]
    VertexNeverPresent(u32),
    #[error("chain is not a cycle")]
    NotACycle,
    #[error("homology group has rank {0}, expected rank 1")]
    RankMismatch(usize),
    #[error("integral elimination met a non-unit pivot; {0}")]
    NonUnitPivot(String),
    #[error("unknown built-in complex `{0}`")]
    UnknownBuiltin(String),
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),
    #[error("internal consistency failure: {0}")]
    Consistency(String),
    #[error("{} link computation(s) failed; first: {:?}: {}", .0.len(), .0[0].0, .0[0].1)]
    LinkFailures(Vec<(Vec<u32>, String)>),
    #[error("link of {simplex:?} failed: {source}")]
    Link {
        simplex: Vec<u32>,
        #[source]
        source: Box<Error>,
    },
}
