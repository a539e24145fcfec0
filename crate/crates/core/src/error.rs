use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("no primitive direction for the zero vector")]
    ZeroVector,

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("ragged matrix: row {row} has length {got}, expected {expected}")]
    Ragged {
        row: usize,
        expected: usize,
        got: usize,
    },

    #[error("empty point set")]
    Empty,

    #[error("point {index} has dimension {got}, expected {expected}")]
    DimensionMismatch {
        index: usize,
        expected: usize,
        got: usize,
    },

    #[error("not full-dimensional: affine rank {rank} in ambient dimension {ambient}")]
    NotFullDimensional { rank: usize, ambient: usize },

    #[error("coordinate {value} exceeds the supported magnitude {limit}")]
    CoordinateOverflow { value: i128, limit: i64 },

    #[error("{0} is not a vertex of the polytope")]
    NotAVertex(String),

    #[error("point {point} is not in {k}P")]
    NotInDilate { point: String, k: u32 },

    #[error("dilation factor {0} out of range")]
    BadDilation(u32),

    #[error("k_P undefined: polytope is not very ample")]
    KpUndefined,

    #[error("gamma requires a smooth polytope")]
    NotSmooth,

    #[error("k_P search exceeded the cap k = {cap}")]
    SearchCapExceeded { cap: u32 },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid family spec: {0}")]
    Family(String),

    #[error("{stage}: {source}")]
    Stage {
        stage: &'static str,
        #[source]
        source: Box<Error>,
    },

    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn at(stage: &'static str) -> impl FnOnce(Error) -> Error {
        move |source| Error::Stage {
            stage,
            source: Box::new(source),
        }
    }
}
