use thiserror::Error;

/// Errors shared by every module in the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NonSquareMatrix { rows: usize, cols: usize },

    #[error("basis is rank deficient")]
    RankDeficient,

    #[error("ambient dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("polytope is not full-dimensional (dim {dim} in ambient {ambient})")]
    LowerDimensional { dim: usize, ambient: usize },

    #[error("origin is not strictly interior; polar body is unbounded")]
    OriginNotInterior,

    #[error("polytope is not centrally symmetric")]
    NotCentrallySymmetric,

    #[error("polytope has a non-lattice vertex")]
    NotLatticePolytope,

    #[error("empty point list")]
    EmptyInput,

    #[error("affine hull is not parallel to a coordinate subspace; intrinsic volume would be irrational")]
    IrrationalSubspace,

    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),

    #[error("cost guard: {0}")]
    CostGuard(String),

    #[error("invalid coordinate index set: {0}")]
    BadIndexSet(String),

    #[error("checkpoint schema version {found} does not match expected {expected}")]
    CheckpointVersion { expected: u32, found: u32 },

    #[error("checkpoint digest mismatch; file is corrupt or was edited")]
    CheckpointCorrupt,

    #[error("cannot parse rational from {0:?}")]
    BadRational(String),

    #[error("invalid polytope file: {0}")]
    BadPolytopeFile(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
