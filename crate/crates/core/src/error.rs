use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("minimal polynomial x^2 + ({b})x + ({c}) is reducible over Q")]
    ReducibleMinimalPolynomial { b: String, c: String },
    #[error("operands live in different fields")]
    FieldMismatch,
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands live in different polynomial rings")]
    RingMismatch,
    #[error("the zero polynomial has no degree")]
    ZeroPolynomial,
    #[error("ideal is not zero-dimensional")]
    NotZeroDimensional,
    #[error("point does not lie on the curve")]
    PointNotOnCurve,
    #[error("singularity is not isolated within degree bound {0}")]
    NotIsolated(usize),
    #[error("polynomial is not a linear form")]
    DegenerateLine,
    #[error("expected a form of degree {expected}, found degree {found}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("plane parametrization has rank below 3")]
    DegenerateParametrization,
    #[error("no non-degenerate choice found after {0} draws")]
    DegenerateAfterRetries(usize),
    #[error("parameter value gives a degenerate member: {0}")]
    DegenerateMember(String),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("too many variables for the Groebner engine ({0})")]
    TooManyVariables(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
