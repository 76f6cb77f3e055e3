use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),

    #[error("edge ({0}, {1}) has an endpoint outside 0..{2}")]
    VertexOutOfRange(usize, usize, usize),

    #[error("vertex set is not strictly increasing: {0:?}")]
    UnsortedVertexSet(Vec<usize>),

    #[error("vertex count mismatch: {0} vs {1}")]
    VertexCountMismatch(usize, usize),

    #[error("invalid generator parameters: {0}")]
    InvalidGenerator(String),

    #[error("operation requires a non-empty graph")]
    EmptyGraph,

    #[error("graph carries no simplex labels")]
    MissingLabels,

    #[error("refinement to depth {depth} would produce {predicted} vertices, above the limit of {limit}")]
    SizeLimit {
        depth: usize,
        predicted: String,
        limit: u64,
    },

    #[error("vertex {0} is isolated; the normalized Laplacian needs minimum degree 1")]
    IsolatedVertex(usize),

    #[error("matrix is not symmetric at ({0}, {1})")]
    NotSymmetric(usize, usize),

    #[error("eigensolver failed to converge on a {0}x{0} matrix")]
    NoConvergence(usize),

    #[error("eigenpair residual {residual:e} exceeds {bound:e} on a {n}x{n} matrix")]
    Residual { n: usize, residual: f64, bound: f64 },

    #[error("Euler characteristic cross-check failed: {0}")]
    CrossCheck(String),

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid generator spec `{0}`")]
    GeneratorSpec(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
