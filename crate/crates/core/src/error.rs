use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex {vertex} out of range 1..={n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("graph is disconnected")]
    Disconnected,
    #[error("{0} is not an edge")]
    NotAnEdge(String),

    #[error("graph6: {0}")]
    Graph6(String),
    #[error("record: {0}")]
    Record(String),
    #[error("matrix: {0}")]
    Matrix(String),

    #[error("distance data does not reproduce the input ({0})")]
    Validation(String),
    #[error("not realizable: {0}")]
    NotRealizable(String),
    #[error("no Ptolemaic graph matches the boundary distance matrix")]
    NoPtolemaicGraph,
    #[error("Ptolemaic reconstruction is not unique: {0} non-isomorphic graphs share the matrix")]
    TheoremViolation(usize),
    #[error("search space too large: {free_bits} free adjacency bits (limit {limit})")]
    SearchTooLarge { free_bits: usize, limit: usize },
    #[error("more than {0} isomorphism classes")]
    CapExceeded(usize),

    #[error("unknown claim id `{0}`")]
    UnknownClaim(String),
    #[error("line {line}: {source}")]
    AtLine {
        line: usize,
        #[source]
        source: Box<Error>,
    },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
