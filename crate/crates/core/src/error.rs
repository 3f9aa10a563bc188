use thiserror::Error;

/// Errors raised by constructors, context operations and parsers.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ill-formed homomorphism: {0}")]
    IllFormedHom(String),

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("invalid module: {0}")]
    InvalidModule(String),

    #[error("invalid object: {0}")]
    InvalidObject(String),

    #[error("not a homomorphism: {0}")]
    NotAHomomorphism(String),

    #[error("precondition failed, morphism is not an epimorphism: {0}")]
    NotAnEpi(String),

    #[error("size limit exceeded: {0}")]
    SizeLimit(String),

    #[error("degree limit exceeded: {0}")]
    DegreeLimitExceeded(String),

    #[error("coproduct construction failed: {0}")]
    CoproductFailure(String),

    #[error("group-object axiom violated: {axiom} (witness: {witness})")]
    AxiomViolation { axiom: String, witness: String },

    #[error("malformed derivation: {0}")]
    MalformedDerivation(String),

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }
}
