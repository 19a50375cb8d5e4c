use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("the kernel is trivial")]
    TrivialKernel,

    #[error("polynomial variables do not match: {0}")]
    VariableMismatch(String),

    #[error("operation undefined for the zero polynomial")]
    ZeroPolynomial,

    #[error("symbolic determinant of a {size}x{size} matrix exceeds the limit of {limit}x{limit}; use the randomized rank path instead")]
    SizeGuard { size: usize, limit: usize },

    #[error("the zero locus is empty for all parameter values")]
    EmptyLocus,

    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),

    #[error("degenerate slice: {0}")]
    DegenerateSlice(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("the network has no dynamics (stoichiometric matrix is zero)")]
    ZeroDynamics,

    #[error("invalid choice of intermediates: {0}")]
    InvalidChoice(String),

    #[error("search budget of {0} states exceeded")]
    SearchBudgetExceeded(usize),

    #[error("the system has non-isolated zeros on the slice")]
    NonIsolatedZeros,
}
