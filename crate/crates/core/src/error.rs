use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("operator is not {property}: residual {residual:.3e} exceeds {tol:.3e}")]
    NotStructured {
        property: &'static str,
        residual: f64,
        tol: f64,
    },

    #[error("matrix is not positive definite (minimum eigenvalue {0:.6e})")]
    NotPositiveDefinite(f64),

    #[error("singular matrix")]
    Singular,

    #[error("Fock space needs {required} entries but the budget is {budget}")]
    BudgetExceeded { required: usize, budget: usize },

    #[error("boson occupation of mode {mode} would exceed the cap {cap}")]
    CapOverflow { mode: usize, cap: u32 },

    #[error("{what} residual {residual:.3e} exceeds {tol:.3e}")]
    VerificationFailed {
        what: &'static str,
        residual: f64,
        tol: f64,
    },

    #[error("principal logarithm undefined: eigenvalue {re:+.6e}{im:+.6e}i lies on the branch cut")]
    BranchCut { re: f64, im: f64 },

    #[error("free energy diverges: mu = {mu} is not below the lowest level {min_level}")]
    Divergence { mu: f64, min_level: f64 },

    #[error("spectral gap closed: eigenvalue {eigenvalue:.3e} lies within {zero_tol:.1e} of zero")]
    GapClosed { eigenvalue: f64, zero_tol: f64 },

    #[error("unsupported: {0}")]
    Unsupported(&'static str),
}

pub type Result<T> = std::result::Result<T, Error>;
