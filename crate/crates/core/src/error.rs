use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// An argument is outside the domain of the quantity being evaluated.
    #[error("{what} out of domain: {detail}")]
    Domain { what: &'static str, detail: String },

    #[error("division by zero: {0}")]
    DivisionByZero(&'static str),

    /// A cycle configuration whose cyclic population is undefined.
    #[error("degenerate cycle configuration: {0}")]
    DegenerateConfig(String),

    #[error("quadrature did not converge after {subdivisions} subdivisions (error estimate {error:.3e})")]
    Convergence { subdivisions: usize, error: f64 },

    #[error("regulator extrapolation unstable: residual {residual:.3e} exceeds {limit:.3e}")]
    ExtrapolationUnstable { residual: f64, limit: f64 },

    /// Closed form and oracle disagree beyond the configured tolerance.
    #[error("oracle mismatch at {at}: closed form {closed:.12e}, oracle {oracle:.12e}, relative deviation {deviation:.3e}")]
    OracleMismatch {
        at: String,
        closed: f64,
        oracle: f64,
        deviation: f64,
    },

    #[error("non-finite value for {0}")]
    NonFinite(String),

    #[error("config error: {0}")]
    Config(String),

    #[error("no rows to write")]
    EmptyRows,

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn domain(what: &'static str, detail: impl Into<String>) -> Self {
        Error::Domain {
            what,
            detail: detail.into(),
        }
    }

    /// Whether the error stems from bad user input rather than a numerical failure.
    pub fn is_config(&self) -> bool {
        matches!(
            self,
            Error::Domain { .. } | Error::DegenerateConfig(_) | Error::Config(_) | Error::EmptyRows
        )
    }
}
