use thiserror::Error;

/// Failures of the polynomial / ideal layer.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),
    #[error("ideal is not zero-dimensional (dimension {0})")]
    NotZeroDimensional(i64),
    #[error("singularity is not isolated: Jacobian ideal has dimension {0}")]
    NotIsolated(i64),
    #[error("zero polynomial where a nonzero one is required")]
    ZeroPolynomial,
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("operands live in different rings")]
    RingMismatch,
    #[error("a denominator vanishes modulo the working prime")]
    UnluckyPrime,
    #[error("too many variables: {0} (at most {max})", max = crate::monomial::MAX_VARS)]
    TooManyVariables(usize),
    #[error("exponent overflow")]
    ExponentOverflow,
    #[error("not a linear form: {0}")]
    NotLinear(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

/// Parse failure with a 1-based line/column position.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{column}: {message}")]
pub struct ParseError {
    pub message: String,
    pub line: usize,
    pub column: usize,
}

/// Failures of the determinantal / invariant / section layers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("invalid determinantal type (m={m}, n={n}, t={t}): need 1 <= t <= min(m, n)")]
    InvalidType { m: usize, n: usize, t: usize },
    #[error("not determinantal: minors ideal has codimension {actual}, expected {expected}")]
    NotDeterminantal { expected: i64, actual: i64 },
    #[error("{what}: no admissible random choice after {attempts} attempts")]
    DegenerateAfterRetries { what: String, attempts: usize },
    #[error("critical locus of the linear form is not isolated: {0}")]
    NotIsolatedCriticalLocus(String),
    #[error("wrong dimension: expected {expected}, got {actual}")]
    WrongDimension { expected: usize, actual: usize },
    #[error("hypothesis violated: {0}")]
    HypothesisViolation(String),
    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("inconclusive: {0}")]
    Inconclusive(String),
    #[error("matrix shape error: {0}")]
    Shape(String),
    #[error("at section level of dimension {dim}: {source}")]
    AtLevel {
        dim: usize,
        #[source]
        source: Box<Error>,
    },
}

impl Error {
    pub fn at_level(self, dim: usize) -> Error {
        match self {
            e @ Error::AtLevel { .. } => e,
            e => Error::AtLevel { dim, source: Box::new(e) },
        }
    }

    /// Innermost error, skipping level annotations.
    pub fn root(&self) -> &Error {
        match self {
            Error::AtLevel { source, .. } => source.root(),
            e => e,
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
