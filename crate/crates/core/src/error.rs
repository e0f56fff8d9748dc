use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),

    #[error("conflicting entries for pair ({0}, {1})")]
    Conflict(String, String),

    #[error("system is not even: m({0}, {1}) = {2}")]
    NotEven(String, String, u32),

    #[error("generator set {0} is not spherical")]
    NotSpherical(String),

    #[error("order of W_T for {0} does not fit in 128 bits")]
    OrderOverflow(String),

    #[error("{0} is not a face of the complex")]
    NotAFace(String),

    #[error("vertex {vertex} is not safe: length {length} + {depth} exceeds radius {radius}")]
    UnsafeVertex {
        vertex: String,
        length: usize,
        depth: usize,
        radius: usize,
    },

    #[error("coset {0} is not a cell of the ball complex")]
    MissingCell(String),

    #[error("support of {0} is not contained in {1}")]
    SupportNotContained(String, String),

    #[error("{0} is not in S' for t = {1}")]
    NotInSPrime(String, String),

    #[error("ruin type {0} is not a spherical subset of {1}")]
    InvalidRuinType(String, String),

    #[error("expected a two-letter ruin type, got {0}")]
    NotTwoLetter(String),

    #[error("chain set is not a subcomplex: {0}")]
    NotSubcomplex(String),

    #[error("too many generators: {0} (at most 64 supported)")]
    TooManyGenerators(usize),

    #[error("{0}")]
    Usage(String),

    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;
