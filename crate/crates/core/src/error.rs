use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    /// Syntax error while parsing a polynomial expression.
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },

    /// A variable name not in the active variable set.
    #[error("unknown variable `{name}` at offset {offset}")]
    UnknownVariable { name: String, offset: usize },

    /// Point dimension does not match the polynomial's variable count.
    #[error("dimension mismatch: expected {expected} coordinates, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    /// An operation that requires a nonzero polynomial received the zero polynomial.
    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,

    /// A zero direction vector where a nonzero one is required.
    #[error("direction vector must be nonzero")]
    ZeroDirection,

    /// Input was required to be homogeneous but is not.
    #[error("polynomial is not homogeneous (component degrees {degrees:?})")]
    NotHomogeneous { degrees: Vec<u32> },

    /// A certified hypothesis of a lemma or theorem does not hold on the input.
    #[error("hypothesis violation ({name}): {detail}")]
    HypothesisViolation { name: String, detail: String },

    /// Coefficient vector lies outside the admissible set (1-norm below the floor).
    #[error("coefficient vector not in K: |a_0|+...+|a_d| = {norm} < m = {floor}")]
    NotInCoefficientSet { norm: String, floor: String },

    /// Parameter outside its documented range.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// Search procedure exhausted its candidate budget.
    #[error("exhausted {tried} candidates without success: {what}")]
    Exhausted { what: String, tried: usize },

    /// Not enough usable data points for a fit.
    #[error("insufficient data: {0}")]
    InsufficientData(String),

    /// Quadrature failed its budget-doubling agreement check.
    #[error("quadrature unconverged: disagreement {disagreement:.3e} at lambda = {lambda:.6e}")]
    Unconverged { lambda: f64, disagreement: f64 },

    /// Malformed domain specification.
    #[error("invalid domain: {0}")]
    InvalidDomain(String),
}
