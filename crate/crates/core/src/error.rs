use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid graph: {0}")]
    Graph(String),

    #[error("graph is not sufficiently subdivided for {particles} particles: {detail}")]
    InsufficientSubdivision { particles: usize, detail: String },

    #[error("tree/root choice yields {found} critical 0-cells, expected exactly one ({expected})")]
    CriticalZeroCells { expected: String, found: usize },

    #[error("invalid cell: {0}")]
    Cell(String),

    #[error("Morse matching violated: {0}")]
    Matching(String),

    #[error("rewriting exceeded the step bound of {0}")]
    StepBound(usize),

    #[error("invalid loop: {0}")]
    Loop(String),

    #[error("physical system is not invertible with the given loops; unsolved critical cells: {}", .unsolved.join(", "))]
    Unsolved { unsolved: Vec<String>, suggestions: Vec<String> },

    #[error("no critical vertex can be added to {0}")]
    NoPlusVertex(String),

    #[error("lifting check failed: {0}")]
    Lifting(String),

    #[error("generator {0} has no matrix assigned")]
    Unassigned(String),

    #[error("representation error: {0}")]
    Representation(String),

    #[error("invalid input: {0}")]
    Input(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Process exit code used by the command-line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Graph(_)
            | Error::InsufficientSubdivision { .. }
            | Error::CriticalZeroCells { .. }
            | Error::Cell(_)
            | Error::Loop(_)
            | Error::Input(_)
            | Error::Io(_)
            | Error::Json(_) => 2,
            Error::Matching(_)
            | Error::StepBound(_)
            | Error::Unsolved { .. }
            | Error::NoPlusVertex(_)
            | Error::Lifting(_)
            | Error::Unassigned(_)
            | Error::Representation(_) => 3,
        }
    }
}
