use thiserror::Error;

use crate::degree::Multidegree;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("{0} is not a supported prime characteristic")]
    NotPrime(u64),

    #[error("a polynomial ring needs at least one variable")]
    EmptyRing,

    #[error("length mismatch in {what}: expected {expected}, found {found}")]
    LengthMismatch {
        what: String,
        expected: usize,
        found: usize,
    },

    #[error(
        "grading is not positive: no functional with coordinates bounded by {bound} is positive \
         on every variable degree; raise the bound or supply theta explicitly"
    )]
    NotPositivelyGraded { bound: i64 },

    #[error("supplied theta {theta:?} is not positive on the degree of variable {var}")]
    ThetaNotPositive { theta: Vec<i64>, var: usize },

    #[error("operands belong to different rings")]
    RingMismatch,

    #[error("inhomogeneous {what}")]
    Inhomogeneous { what: String },

    #[error("ambient free modules do not match: {0}")]
    AmbientMismatch(String),

    #[error("matrix shape mismatch: {0}")]
    Shape(String),

    #[error("the map does not send relations into relations")]
    RelationsNotPreserved,

    #[error("the endomorphism does not square to zero")]
    NotSquareZero,

    #[error("the matrix does not commute with the differentials")]
    NotAMorphism,

    #[error("module is not generated in a single degree (generator degrees {degrees:?})")]
    NotSingleDegree { degrees: Vec<Multidegree> },

    #[error("only Z-gradings with positive variable degrees are supported here")]
    UnsupportedGrading,

    #[error("the differential must have degree 0")]
    NonzeroDegreeDifferential,

    #[error("parse error at offset {offset} in {input:?}: {message}")]
    Parse {
        input: String,
        offset: usize,
        message: String,
    },

    #[error("schema error at {pointer}: {message}")]
    Schema { pointer: String, message: String },
}

impl Error {
    pub(crate) fn mismatch(what: impl Into<String>, expected: usize, found: usize) -> Self {
        Error::LengthMismatch {
            what: what.into(),
            expected,
            found,
        }
    }

    pub(crate) fn inhomogeneous(what: impl Into<String>) -> Self {
        Error::Inhomogeneous { what: what.into() }
    }

    pub(crate) fn schema(pointer: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Schema {
            pointer: pointer.into(),
            message: message.into(),
        }
    }

    /// Whether this error reports a malformed description rather than an
    /// algebraic failure of well-formed input.
    pub fn is_input_error(&self) -> bool {
        matches!(
            self,
            Error::NotPrime(_)
                | Error::EmptyRing
                | Error::LengthMismatch { .. }
                | Error::Parse { .. }
                | Error::Schema { .. }
                | Error::Shape(_)
                | Error::AmbientMismatch(_)
                | Error::RingMismatch
        )
    }
}
