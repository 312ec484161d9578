use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error(
        "graph is not {cap}-degenerate: {remaining} vertices left with current degree > {cap}"
    )]
    NotDegenerate { cap: usize, remaining: usize },

    #[error("incomplete decoration: missing vertices {missing_vertices:?}, missing edges {missing_edges:?}")]
    IncompleteDecoration {
        missing_vertices: Vec<u32>,
        missing_edges: Vec<(u32, u32)>,
    },

    #[error("invalid decoration: {0}")]
    InvalidDecoration(String),

    #[error("search space of {required} points exceeds the budget of {budget}")]
    BudgetExceeded { required: u128, budget: u128 },

    #[error("not a bipartition: {0}")]
    NotBipartition(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("{value} is outside the coloring horizon 1..={horizon}")]
    OutOfHorizon { value: u64, horizon: u64 },

    #[error("independent routes disagree: {0}")]
    Inconsistent(String),

    #[error("integer overflow in {0}")]
    Overflow(&'static str),
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: message.into(),
        }
    }
}
