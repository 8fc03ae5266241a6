use thiserror::Error;

/// Shown when an input file cannot be decoded as an image.
pub const MSG_CANNOT_PROCESS: &str =
    "the uploaded image cannot be processed. Please, upload a different image";

/// Shown when an image contains nothing to decompose.
pub const MSG_NO_OBJECTS: &str =
    "no objects have been recognized. Please, upload a different image";

#[derive(Debug, Error)]
pub enum Error {
    #[error("{MSG_CANNOT_PROCESS} ({0})")]
    ImageUnprocessable(String),

    #[error("{MSG_NO_OBJECTS}")]
    NoObjects,

    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("malformed document: {0}")]
    Document(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
