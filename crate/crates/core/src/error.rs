use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: group has {expected} factors, element has {found} coordinates")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("coordinate {value} out of range for factor C{modulus}")]
    CoordinateOutOfRange { value: u32, modulus: u32 },

    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("cannot parse `{input}`: {reason}")]
    Parse { input: String, reason: String },

    #[error("{0}")]
    Domain(String),

    #[error("{what} is {value}, above the cap of {cap}; {hint}")]
    CapExceeded {
        what: &'static str,
        value: String,
        cap: String,
        hint: &'static str,
    },

    #[error("baseline group not contained in the automorphism group of Cay({group}, {set}); this is an implementation bug")]
    ContainmentViolation { group: String, set: String },

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn parse(input: &str, reason: impl Into<String>) -> Self {
        Error::Parse {
            input: input.to_string(),
            reason: reason.into(),
        }
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
