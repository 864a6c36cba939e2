use core::fmt;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A vector or tuple has the wrong number of coordinates.
    ArityMismatch { expected: usize, found: usize },
    /// Binary operation on grids over alphabets of different size.
    AlphabetMismatch { left: usize, right: usize },
    /// Unary prefix is shorter than `max_index + 2 * max_period`.
    PrefixTooShort { needed: usize, found: usize },
    /// No period up to the guaranteed bound explains the prefix.
    NoConsistentPeriod { max_period: usize },
    /// A lasso needs a period of at least one.
    ZeroPeriod,
    /// A final tuple lies outside the grid box.
    FinalOutOfBox,
    /// Letter index outside `0..alphabet_size`.
    LetterOutOfRange { letter: usize, alphabet_size: usize },
    /// The transition monoid grew past the configured budget.
    MonoidBudgetExceeded { budget: usize },
    /// A witness family was instantiated outside its parameter range.
    InvalidParameter(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::ArityMismatch { expected, found } => {
                write!(f, "expected {expected} coordinates, found {found}")
            }
            Error::AlphabetMismatch { left, right } => {
                write!(f, "alphabet size mismatch: {left} vs {right}")
            }
            Error::PrefixTooShort { needed, found } => {
                write!(f, "unary prefix too short: need {needed} bits, got {found}")
            }
            Error::NoConsistentPeriod { max_period } => {
                write!(f, "no period <= {max_period} is consistent with the prefix")
            }
            Error::ZeroPeriod => write!(f, "period must be at least 1"),
            Error::FinalOutOfBox => write!(f, "final tuple lies outside the grid box"),
            Error::LetterOutOfRange {
                letter,
                alphabet_size,
            } => write!(
                f,
                "letter {letter} out of range for alphabet of size {alphabet_size}"
            ),
            Error::MonoidBudgetExceeded { budget } => {
                write!(f, "transition monoid exceeds budget of {budget} elements")
            }
            Error::InvalidParameter(what) => write!(f, "invalid parameter: {what}"),
        }
    }
}

impl core::error::Error for Error {}
