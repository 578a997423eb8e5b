use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("matrix has a nontrivial kernel")]
    NotInjective,
    #[error("image of the map is not contained in the image of the monomorphism")]
    NotContained,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("index poset is not directed: {0} and {1} have no common upper bound")]
    NotDirected(String, String),
    #[error("index poset is empty")]
    EmptyPoset,
    #[error("unknown index element `{0}`")]
    UnknownElement(String),
    #[error("{law} fails at {witness}")]
    AxiomFailure { law: String, witness: String },
    #[error("functor law violated: {0}")]
    FunctorLaw(String),
    #[error("naturality square fails at {0}")]
    NotNatural(String),
    #[error("object is not filtered: transition {0}<={1} is not injective")]
    NotFiltered(String, String),
    #[error("composite of the pair is not zero")]
    ComposeNonzero,
    #[error("objects live over different index posets")]
    PosetMismatch,
    #[error("canonical comparison is not an isomorphism: {0}")]
    ComparisonNotIso(String),
    #[error("morphism is not linear over the ring: action square fails at {0}")]
    NotLinear(String),
    #[error("strictness criteria disagree at {0}")]
    StrictnessMismatch(String),
    #[error("not a complex: {0}")]
    NotAComplex(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("validation of `{object}` failed: {law}")]
    Validation { object: String, law: String },
    #[error("unknown command `{0}`")]
    UnknownCommand(String),
    #[error("unknown object `{0}`")]
    UnknownObject(String),
    #[error("bad arguments: {0}")]
    Usage(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(format!("line {} column {}: {}", e.line(), e.column(), e))
    }
}
