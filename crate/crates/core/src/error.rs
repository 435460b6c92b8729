use thiserror::Error;

/// Errors raised by the workbench. Every variant maps onto one of the
/// documented failure modes (bad input, alphabet mismatch, resource cap).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at position {position}: {message}")]
    Syntax { position: usize, message: String },

    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),

    #[error("symbol `{0}` is not in the alphabet")]
    ForeignSymbol(String),

    #[error("alphabet mismatch: {0}")]
    AlphabetMismatch(String),

    #[error("resource limit exceeded: {what} (cap {cap})")]
    ResourceLimit { what: &'static str, cap: usize },

    #[error("invalid grammar: {0}")]
    InvalidGrammar(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("document format error: {0}")]
    Format(String),

    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
