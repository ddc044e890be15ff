use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("not a tree: {0}")]
    NotATree(String),
    #[error("vertex {vertex} out of range for a tree of order {n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("vertex set must be nonempty")]
    EmptySet,
    #[error("vertex set has duplicate member {0}")]
    DuplicateVertex(usize),
    #[error("vertex set has size {found}, expected l = {expected}")]
    BadSetSize { expected: usize, found: usize },
    #[error("k = {k} exceeds the tree order n = {n}")]
    KTooLarge { k: usize, n: usize },
    #[error("invalid (k, l) = ({k}, {l}): need k >= 2 and l <= k")]
    BadParams { k: usize, l: usize },
    #[error("parameter out of range: {0}")]
    BadRange(String),
    #[error("invalid signature: {0}")]
    BadSignature(String),
    #[error("caterpillar attachments change the diameter from {expected} to {found}")]
    DiameterChanged { expected: usize, found: usize },
    #[error("tuples have different lengths ({0} vs {1})")]
    LengthMismatch(usize, usize),
    #[error("invalid sigma form: {0}")]
    InvalidForm(String),
    #[error("invalid (p,q) site: {0}")]
    InvalidSite(String),
    #[error("normalization stalled: {0}")]
    Stalled(String),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
}
