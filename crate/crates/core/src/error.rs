use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("zero-norm root")]
    ZeroRoot,
    #[error("unsupported type: {0}")]
    UnsupportedType(String),
    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),
    #[error("diagram is not bipartite")]
    NonBipartite,
    #[error("enumeration cap of {0} exceeded")]
    CapExceeded(u64),
    #[error("no word of length <= {0} matches")]
    NotFound(usize),
    #[error("rank deficient: expected {expected}, got {got}")]
    RankDeficient { expected: usize, got: usize },
    #[error("eigenplane degenerate: separation {0:e}")]
    EigenDegenerate(f64),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("singular matrix")]
    Singular,
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("io error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
