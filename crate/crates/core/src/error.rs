use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid vertex name {0:?}: names must be nonempty and contain no whitespace or commas")]
    InvalidName(String),
    #[error("duplicate vertex {0:?}")]
    DuplicateVertex(String),
    #[error("unknown vertex {0:?}")]
    UnknownVertex(String),
    #[error("vertex index {0} out of range")]
    IndexOutOfRange(usize),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("not a multipartite tournament: {0}")]
    NotMultipartiteTournament(String),
    #[error("not a tournament with possible loops: {0}")]
    NotTournament(String),
    #[error("digraph is not reflexive: vertex {0:?} has no loop")]
    NotReflexive(String),
    #[error("extensions are only defined for loopless digraphs (loop at {0:?})")]
    LoopInExtension(String),
    #[error("{what}: size {size} exceeds guard {guard}; raise the guard explicitly to continue")]
    GuardExceeded {
        what: &'static str,
        size: usize,
        guard: usize,
    },
    #[error("ordering is not a permutation of the vertex set: {0}")]
    NotPermutation(String),
    #[error("ordering is not a Min-Max ordering: {0}")]
    NotMinMax(String),
    #[error("cost matrix shape mismatch: expected {expected_rows}x{expected_cols}, got {rows}x{cols}")]
    CostShape {
        expected_rows: usize,
        expected_cols: usize,
        rows: usize,
        cols: usize,
    },
    #[error("not a homomorphism: {0}")]
    NotHomomorphism(String),
    #[error("inconsistent decomposition: {0}")]
    InconsistentDecomposition(String),
    #[error("search budget of {0} nodes exceeded")]
    BudgetExceeded(u64),
    #[error("integer overflow while {0}")]
    Overflow(&'static str),
    #[error("no solver applies: {0}")]
    NoSolver(String),
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}
