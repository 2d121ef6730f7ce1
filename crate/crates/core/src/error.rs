use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("degree {0} is outside [0, 1]")]
    DegreeOutOfRange(f64),

    #[error("entry ({row}, {col}) = {value} is outside [0, 1]")]
    EntryOutOfRange {
        row: String,
        col: String,
        value: f64,
    },

    #[error("matrix is not {expected}x{expected}: {detail}")]
    DimensionMismatch { expected: usize, detail: String },

    #[error("universe must contain at least one label")]
    EmptyUniverse,

    #[error("duplicate label `{0}` in universe")]
    DuplicateLabel(String),

    #[error("unknown label `{0}`")]
    UnknownLabel(String),

    #[error("relations are defined over different universes")]
    UniverseMismatch,

    #[error("unknown t-norm `{0}` (expected godel, lukasiewicz or product)")]
    UnknownTNorm(String),

    #[error("closure variant `{variant}` requires the godel t-norm")]
    VariantRequiresGodel { variant: &'static str },

    #[error("universe of size {size} exceeds the path-enumeration cap {cap}")]
    UniverseTooLarge { size: usize, cap: usize },

    #[error("grid enumeration of {candidates} candidates exceeds the cap {cap}")]
    EnumerationCapExceeded { candidates: u128, cap: u64 },

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("malformed input: {0}")]
    Parse(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
