use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("variable mismatch: `{left}` vs `{right}`")]
    VariableMismatch { left: String, right: String },
    #[error("gcd of two zero polynomials is undefined")]
    BothZero,
    #[error("input polynomial must be non-constant")]
    ZeroOrConstantInput,
    #[error("{d} does not divide the maximal power exponent {max}")]
    NotADivisor { d: usize, max: usize },
    #[error("P(z)Q(w) - 1 is irreducible; there is no factorization to build")]
    NotReducible,
    #[error("zero polynomial has no bidegree")]
    ZeroPolynomial,
    #[error("leading coefficient degenerates: the curve meets the corner at infinity")]
    DegenerateLeadingCoefficient,
    #[error("index {index} out of range (len {len})")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("inconsistent factor data: {0}")]
    InconsistentFactorData(String),
    #[error("root finder failed to converge (residual {residual:e})")]
    ConvergenceFailure { residual: f64 },
    #[error("tracked roots collided near z = {re} + {im}i")]
    PathCollision { re: f64, im: f64 },
    #[error("ambiguous root matching after loop closure")]
    MatchingAmbiguity,
    #[error("no usable basepoint found after {attempts} attempts")]
    DegenerateBasepoint { attempts: usize },
    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// True for failures of the floating-point machinery (root finding, path
    /// tracking) as opposed to invalid input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::ConvergenceFailure { .. }
                | Error::PathCollision { .. }
                | Error::MatchingAmbiguity
                | Error::DegenerateBasepoint { .. }
        )
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
