use thiserror::Error;

/// Errors raised by the matrix special-function library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum MatError {
    #[error("dimension mismatch: expected order {expected}, found {found}")]
    Dimension { expected: usize, found: usize },

    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("convergence domain violated: {0}")]
    ConvergenceDomain(String),

    /// A stated hypothesis of a theorem or definition does not hold.
    #[error("precondition `{hypothesis}` failed for {role} ({anchor})")]
    Precondition {
        hypothesis: String,
        role: String,
        anchor: String,
    },

    #[error("eigenvalue iteration failed for a matrix of order {order}")]
    EigenFailure { order: usize },

    #[error("matrix is not diagonalizable to working precision (condition estimate {condition:.3e})")]
    NotDiagonalizable { condition: f64 },

    #[error("singular matrix encountered: {0}")]
    Singular(String),

    #[error("shift singularity: A + {k}I is singular")]
    ShiftSingular { k: usize },

    #[error("parameter pole: (B)_n factor singular at n = {n}")]
    ParameterPole { n: usize },

    #[error("non-finite scalar function value at eigenvalue {re}{im:+}i")]
    NonFiniteEigenvalue { re: f64, im: f64 },

    #[error("non-finite integrand value at node {node:.6e}")]
    Integrand { node: f64 },

    #[error("oracle failure: {0}")]
    Oracle(String),

    #[error("unknown identifier `{id}`; valid ids: {valid}")]
    UnknownId { id: String, valid: String },

    #[error("generation failure: {0}")]
    Generation(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, MatError>;

impl MatError {
    pub fn precondition(
        hypothesis: impl Into<String>,
        role: impl Into<String>,
        anchor: impl Into<String>,
    ) -> Self {
        MatError::Precondition {
            hypothesis: hypothesis.into(),
            role: role.into(),
            anchor: anchor.into(),
        }
    }

    /// Short machine-readable tag used by the CLI error object.
    pub fn kind(&self) -> &'static str {
        match self {
            MatError::Dimension { .. } => "dimension",
            MatError::InvalidMatrix(_) => "invalid_matrix",
            MatError::Domain(_) => "domain",
            MatError::ConvergenceDomain(_) => "convergence_domain",
            MatError::Precondition { .. } => "precondition",
            MatError::EigenFailure { .. } => "eigen_failure",
            MatError::NotDiagonalizable { .. } => "not_diagonalizable",
            MatError::Singular(_) => "singular",
            MatError::ShiftSingular { .. } => "shift_singular",
            MatError::ParameterPole { .. } => "parameter_pole",
            MatError::NonFiniteEigenvalue { .. } => "non_finite_eigenvalue",
            MatError::Integrand { .. } => "integrand",
            MatError::Oracle(_) => "oracle",
            MatError::UnknownId { .. } => "unknown_id",
            MatError::Generation(_) => "generation",
            MatError::Parse(_) => "parse",
        }
    }
}
