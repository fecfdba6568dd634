use alloc::string::String;
use core::fmt;

/// Errors raised by the computations in this crate.
///
/// Variants split into two families: input-validation errors (the data does
/// not describe a valid object) and consistency errors (valid-looking data
/// produced a configuration that a proven statement rules out). The latter
/// are reported by [`Error::is_consistency`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    DimensionMismatch { expected: usize, found: usize },
    AsymmetricForm { row: usize, col: usize },
    EmptyLattice,
    DegenerateForm,
    Precondition(String),
    InvalidModel(String),
    InvalidOmega(String),
    InvalidSurface(String),
    NotExceptional(String),
    NonOrthogonal(String),
    InconsistentInput(String),
    NonIntegralSignature(String),
    Unsupported(String),
    /// The set of −1 classes orthogonal to a nonempty positive-genus surface
    /// was not pairwise orthogonal.
    UniquenessViolation(String),
    /// A configuration that a proven statement excludes was reached.
    TheoremViolation(String),
    /// Two independent evaluation routes disagreed.
    InternalConsistency(String),
}

impl Error {
    pub fn is_consistency(&self) -> bool {
        matches!(
            self,
            Error::UniquenessViolation(_) | Error::TheoremViolation(_) | Error::InternalConsistency(_)
        )
    }
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            Error::AsymmetricForm { row, col } => {
                write!(f, "intersection form is not symmetric at ({row}, {col})")
            }
            Error::EmptyLattice => f.write_str("lattice must have rank at least 1"),
            Error::DegenerateForm => f.write_str("intersection form is degenerate"),
            Error::Precondition(m) => write!(f, "precondition violated: {m}"),
            Error::InvalidModel(m) => write!(f, "invalid manifold model: {m}"),
            Error::InvalidOmega(m) => write!(f, "invalid symplectic class: {m}"),
            Error::InvalidSurface(m) => write!(f, "invalid surface: {m}"),
            Error::NotExceptional(m) => write!(f, "not a -1 class: {m}"),
            Error::NonOrthogonal(m) => write!(f, "classes are not pairwise orthogonal: {m}"),
            Error::InconsistentInput(m) => write!(f, "inconsistent input: {m}"),
            Error::NonIntegralSignature(m) => write!(f, "non-integral signature: {m}"),
            Error::Unsupported(m) => write!(f, "unsupported configuration: {m}"),
            Error::UniquenessViolation(m) => write!(f, "uniqueness violation: {m}"),
            Error::TheoremViolation(m) => write!(f, "theorem violation: {m}"),
            Error::InternalConsistency(m) => write!(f, "internal consistency failure: {m}"),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T, E = Error> = core::result::Result<T, E>;
