use thiserror::Error;

/// Every failure the library can report. The variant name doubles as the
/// machine-readable tag used by the command line front end.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("eigenstructure is ambiguous at this tolerance (candidates: {0:?})")]
    AmbiguousBoundary(Vec<String>),
    #[error("vector is null for the Hermitian form")]
    NullVector,
    #[error("degenerate triple: some pairing vanishes")]
    DegenerateTriple,
    #[error("degenerate configuration: a denominator vanishes")]
    DegenerateConfiguration,
    #[error("tetrahedron is contained in a complex line")]
    DegenerateTetrahedron,
    #[error("cross ratios violate the compatibility inequality by {0:e}")]
    IncompatibleCrossRatios(f64),
    #[error("element is not loxodromic")]
    NotLoxodromic,
    #[error("fixed points of the pair lie in a complex line")]
    DegenerateFixedPoints,
    #[error("linear system is singular")]
    SingularSystem,
    #[error("trace {0} is not the trace of a loxodromic element")]
    NotLoxodromicTrace(String),
    #[error("reconstruction failed: {0}")]
    ReconstructionFailure(String),
    #[error("the pair has a common fixed point")]
    CommonFixedPoint,
    #[error("no compatible choice of fixed points")]
    NoCompatibleSelection,
    #[error("gluing condition violated (residual {0:e})")]
    GluingViolation(f64),
    #[error("cross ratio undefined for condition {0}")]
    DegenerateCrossRatio(u8),
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    #[error("parameter {0} outside the admissible interval")]
    OutOfInterval(f64),
    #[error("product of reflections has the wrong order: {0}")]
    OrderMismatch(String),
    #[error("no ellipticity onset found in the interval")]
    NoOnsetFound,
    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    pub fn tag(&self) -> &'static str {
        match self {
            Error::AmbiguousBoundary(_) => "AmbiguousBoundary",
            Error::NullVector => "NullVector",
            Error::DegenerateTriple => "DegenerateTriple",
            Error::DegenerateConfiguration => "DegenerateConfiguration",
            Error::DegenerateTetrahedron => "DegenerateTetrahedron",
            Error::IncompatibleCrossRatios(_) => "IncompatibleCrossRatios",
            Error::NotLoxodromic => "NotLoxodromic",
            Error::DegenerateFixedPoints => "DegenerateFixedPoints",
            Error::SingularSystem => "SingularSystem",
            Error::NotLoxodromicTrace(_) => "NotLoxodromicTrace",
            Error::ReconstructionFailure(_) => "ReconstructionFailure",
            Error::CommonFixedPoint => "CommonFixedPoint",
            Error::NoCompatibleSelection => "NoCompatibleSelection",
            Error::GluingViolation(_) => "GluingViolation",
            Error::DegenerateCrossRatio(_) => "DegenerateCrossRatio",
            Error::OutOfRange(_) => "OutOfRange",
            Error::OutOfInterval(_) => "OutOfInterval",
            Error::OrderMismatch(_) => "OrderMismatch",
            Error::NoOnsetFound => "NoOnsetFound",
            Error::InvalidInput(_) => "InvalidInput",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
