use thiserror::Error;

/// Failure modes shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("series did not converge: {0}")]
    Convergence(String),
    #[error("invalid parameters: {0}")]
    Param(String),
    #[error("branch unavailable: {0}")]
    Branch(String),
    #[error("residual is not a multiple of the identity (diagonal spread {spread:.3e}, off-diagonal {off_diagonal:.3e})")]
    NonConstantResidual { spread: f64, off_diagonal: f64 },
    #[error("grid error: {0}")]
    Grid(String),
    #[error("eigensolver error: {0}")]
    Solver(String),
    #[error("normalization error: {0}")]
    Normalization(String),
    #[error("ODE step control failed: {0}")]
    Stiffness(String),
    #[error("level {n} is not admissible (bound: {bound})")]
    Level { n: usize, bound: usize },
    #[error("closed form unavailable: {0}")]
    ClosedFormUnavailable(String),
}

impl Error {
    /// Stable name used by the CLI when reporting failures.
    pub fn name(&self) -> &'static str {
        match self {
            Error::Domain(_) => "DomainError",
            Error::Convergence(_) => "ConvergenceError",
            Error::Param(_) => "ParamError",
            Error::Branch(_) => "BranchError",
            Error::NonConstantResidual { .. } => "NonConstantResidual",
            Error::Grid(_) => "GridError",
            Error::Solver(_) => "SolverError",
            Error::Normalization(_) => "NormalizationError",
            Error::Stiffness(_) => "StiffnessError",
            Error::Level { .. } => "LevelError",
            Error::ClosedFormUnavailable(_) => "ClosedFormUnavailable",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
