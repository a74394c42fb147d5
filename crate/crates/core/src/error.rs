use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// Argument outside the mathematical domain of an operation.
    #[error("domain error in {op}: {detail}")]
    Domain { op: &'static str, detail: String },

    /// Structurally invalid parameters (ordering, dimensions, grid shape).
    #[error("validation error: {field}: {detail}")]
    Validation { field: String, detail: String },

    /// A numerical method could not reach the requested accuracy.
    #[error("accuracy error in {op}: {detail}")]
    Accuracy { op: &'static str, detail: String },

    #[error("overflow in {op}: {detail}")]
    Overflow { op: &'static str, detail: String },

    /// A kernel evaluator produced a value that violates class (PC).
    #[error("integrity error: kernel {kernel} returned {value} at t = {t}")]
    Integrity { kernel: String, t: f64, value: f64 },

    /// Input data unusable for a fit or norm (e.g. nonpositive norms).
    #[error("data error: {0}")]
    Data(String),

    /// A failure while processing one frequency of a spectral evolution.
    #[error("solve failed at frequency {frequency:?} (sigma = {sigma}): {source}")]
    Frequency {
        frequency: Vec<i64>,
        sigma: f64,
        #[source]
        source: Box<Error>,
    },

    #[error("io error: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn domain(op: &'static str, detail: impl Into<String>) -> Self {
        Error::Domain {
            op,
            detail: detail.into(),
        }
    }

    pub(crate) fn validation(field: impl Into<String>, detail: impl Into<String>) -> Self {
        Error::Validation {
            field: field.into(),
            detail: detail.into(),
        }
    }

    pub(crate) fn accuracy(op: &'static str, detail: impl Into<String>) -> Self {
        Error::Accuracy {
            op,
            detail: detail.into(),
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
