use thiserror::Error;

/// Errors shared by all modules. The display strings are part of the CLI
/// contract: the dispatcher maps them onto exit codes, so keep them stable.
#[derive(Debug, Error)]
pub enum Error {
    #[error("unsupported root system: {family}{rank}")]
    UnsupportedRootSystem { family: char, rank: usize },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("degenerate normal")]
    DegenerateNormal,

    #[error("repeated hyperplane")]
    RepeatedHyperplane,

    #[error("arrangement too large for exhaustive enumeration")]
    ArrangementTooLarge,

    #[error("not a flat: {0:?}")]
    NotAFlat(Vec<usize>),

    #[error("torus map not surjective")]
    TorusMapNotSurjective,

    #[error("point not on zero L-level (residual {0:.3e})")]
    NotOnZeroLevel(f64),

    #[error("point outside cotangent chart")]
    OutsideCotangentChart,

    #[error("cotangent chart violation at Weyl element with word {word:?}")]
    ChartViolationAt { word: Vec<usize> },

    #[error("mismatched root system/arrangement")]
    MismatchedArrangement,

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("singular gauge element at vertex {0}")]
    SingularGauge(usize),

    #[error("no convergence: residual {residual:.3e} after {iterations} iterations")]
    NoConvergence { residual: f64, iterations: usize },

    #[error("non-unit determinant: |det - 1| = {0:.3e}")]
    NonUnitDeterminant(f64),

    #[error("flow enters degenerate locus")]
    DegenerateFlow,

    #[error("negative chamber coordinate: {0}")]
    NegativeChamberCoordinate(f64),

    #[error("torus moment level nonzero: {0:.3e}")]
    TorusLevelNonzero(f64),

    #[error("vector not in chosen Borel")]
    NotInBorel,

    #[error("grid too short: need at least {need} samples, got {got}")]
    GridTooShort { need: usize, got: usize },

    #[error("pole encountered: matrix norm exceeded {0:.1e}")]
    PoleEncountered(f64),

    #[error("interpolation out of range")]
    InterpolationOutOfRange,

    #[error("middle object mismatch: {0} vs {1}")]
    MiddleObjectMismatch(String, String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("unknown suite: {0}")]
    UnknownSuite(String),
}

/// Whether the error reports a numerical failure (CLI exit 4) as opposed to
/// a violated precondition (CLI exit 2).
impl Error {
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::NoConvergence { .. }
                | Error::PoleEncountered(_)
                | Error::DegenerateFlow
                | Error::NotOnZeroLevel(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
