use alloc::string::String;
use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    DimensionMismatch {
        context: &'static str,
        expected: usize,
        found: usize,
    },
    ModulusMismatch {
        left: u32,
        right: u32,
    },
    UnsupportedPrime(u32),
    /// Malformed user input: bad presentation, unknown label, wrong shapes.
    InvalidInput(String),
    /// Operands live over different algebras.
    AlgebraMismatch,
    /// Relations do not cut the path algebra down to finite dimension
    /// within the path length limit.
    NotFiniteDimensional {
        max_length: usize,
    },
    /// Multiplication fails associativity on basis elements `(i, j, k)`.
    NonAssociative {
        triple: (usize, usize, usize),
    },
    /// A precondition of the operation does not hold.
    Precondition(String),
    /// A certified answer could not be produced within the search limits.
    Inconclusive(String),
    /// The enumeration budget ran out before the named piece of work.
    BudgetExceeded {
        next: String,
    },
    /// An X-injective mono needed by the construction could not be found.
    EnoughInjectivesNotVerified(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::DimensionMismatch { context, expected, found } => {
                write!(f, "{context}: expected dimension {expected}, found {found}")
            }
            Error::ModulusMismatch { left, right } => {
                write!(f, "mixed moduli {left} and {right}")
            }
            Error::UnsupportedPrime(p) => write!(f, "{p} is not a prime in [2, 65536)"),
            Error::InvalidInput(msg) => write!(f, "invalid input: {msg}"),
            Error::AlgebraMismatch => f.write_str("operands are defined over different algebras"),
            Error::NotFiniteDimensional { max_length } => {
                write!(f, "basis did not stabilize: paths of length {max_length} survive the relations")
            }
            Error::NonAssociative { triple: (i, j, k) } => {
                write!(f, "multiplication is not associative on basis triple ({i}, {j}, {k})")
            }
            Error::Precondition(msg) => write!(f, "precondition violated: {msg}"),
            Error::Inconclusive(msg) => write!(f, "inconclusive: {msg}"),
            Error::BudgetExceeded { next } => write!(f, "budget exceeded before {next}"),
            Error::EnoughInjectivesNotVerified(msg) => {
                write!(f, "enough injectives not verified: {msg}")
            }
        }
    }
}

impl Error {
    /// Errors that mean "no verdict within the limits" rather than a wrong claim or bad input.
    pub fn is_inconclusive(&self) -> bool {
        matches!(self, Error::Inconclusive(_) | Error::BudgetExceeded { .. } | Error::EnoughInjectivesNotVerified(_))
    }
}

impl core::error::Error for Error {}
