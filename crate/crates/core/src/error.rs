use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("exact computation is not available in dimension {0}")]
    UnsupportedDimension(usize),
    #[error("dataset is empty")]
    EmptyDataSet,
    #[error("depth level {0} is outside (0, 1]")]
    InvalidTau(String),
    #[error("depth level {0} exceeds the maximal sample depth")]
    TauExceedsMaxDepth(String),
    #[error("affine dimension {found} is below the ambient dimension {expected}")]
    DegenerateAffineDimension { expected: usize, found: usize },
    #[error("direction must be nonzero")]
    ZeroDirection,
    #[error("no sample point lies on the halfspace boundary")]
    EmptyBoundary,
    #[error("invalid rate {name} = {value}")]
    InvalidRate { name: &'static str, value: f64 },
    #[error("median descent did not terminate after {0} iterations")]
    DescentDidNotTerminate(usize),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("probe refused the distribution: {0}")]
    ProbeRefused(String),
    #[error("budget of {0:?} exceeded")]
    BudgetExceeded(std::time::Duration),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}
