use thiserror::Error;

/// Errors raised by the integrator, the model and both solvers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("nonpositive index at P={p}")]
    NonpositiveIndex { p: f64 },
    #[error("singular scaling exponent at P={p}")]
    SingularScalingExponent { p: f64 },
    #[error("outside laminar range at P={p} (accepted: 0 < P < 2)")]
    OutsideLaminarRange { p: f64 },
    #[error("negative curvature f''={value:e}")]
    NegativeCurvature { value: f64 },
    #[error("curvature sign loss at eta={eta}: f''={value:e}")]
    CurvatureSignLoss { eta: f64, value: f64 },

    #[error("rhs blow-up at t={t}, stage {stage}")]
    RhsBlowUp { t: f64, stage: usize },
    #[error("state blow-up at t={t}")]
    StateBlowUp { t: f64 },
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("invalid Butcher tableau: {0}")]
    InvalidTableau(String),
    #[error("invalid state: {0}")]
    InvalidState(String),

    #[error("no plateau in f*' up to eta*={cap} (tol {tol:e})")]
    NoPlateau { cap: f64, tol: f64 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("shot diverged for f''(0)={guess}: {source}")]
    ShotDiverged {
        guess: f64,
        #[source]
        source: Box<Error>,
    },
    #[error(
        "bracket invalid: residuals at [{low}, {high}] are {residual_low:e} and {residual_high:e}"
    )]
    BracketInvalid {
        low: f64,
        high: f64,
        residual_low: f64,
        residual_high: f64,
    },
    #[error("no convergence after {iterations} iterations (last residual {residual:e})")]
    NoConvergence { iterations: usize, residual: f64 },
}

impl Error {
    /// True for errors caused by a parameter outside the accepted model domain.
    pub fn is_domain_error(&self) -> bool {
        matches!(
            self,
            Error::NonpositiveIndex { .. }
                | Error::SingularScalingExponent { .. }
                | Error::OutsideLaminarRange { .. }
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
