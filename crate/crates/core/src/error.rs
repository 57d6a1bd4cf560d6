use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("point ({x}, {y}) lies outside the surface domain")]
    OutOfDomain { x: f64, y: f64 },

    #[error("finite-difference stencil of half-width {h} around ({x}, {y}) leaves the domain")]
    StencilOutOfDomain { x: f64, y: f64, h: f64 },

    #[error("({x}, {y}) is a singular point (sqrt(D) = {sqrt_d:e})")]
    SingularPoint { x: f64, y: f64, sqrt_d: f64 },

    #[error("characteristic cannot start at singular point ({x}, {y})")]
    StartSingular { x: f64, y: f64 },

    #[error("t = {t} is past the blow-up time {blowup} of the closed-form solution")]
    BeyondBlowup { t: f64, blowup: f64 },

    #[error("bound k(t) = {k} does not dominate sampled COT r = {r} at t = {t}")]
    HypothesisViolated { t: f64, r: f64, k: f64 },

    #[error("not applicable: {0}")]
    NotApplicable(String),

    #[error("degenerate parameters: {0}")]
    DegenerateParams(String),

    #[error("no bracket found for the implicit root at ({x}, {y})")]
    RootNotBracketed { x: f64, y: f64 },

    #[error("implicit solution invalid at ({x}, {y}): d(Phi)/d(y~) = {slope} is not positive")]
    ValidityViolated { x: f64, y: f64, slope: f64 },

    #[error("Burgers branch {branch} undefined at ({x}, {y})")]
    BranchUndefined { x: f64, y: f64, branch: char },

    #[error("matrix dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("frame is not a basis: {0}")]
    FrameNotBasis(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("output error: {0}")]
    Output(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Output(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Output(e.to_string())
    }
}

impl Error {
    /// Errors caused by the geometry (domain exits, singular points, failed
    /// implicit solves) rather than by malformed input.
    pub fn is_domain_error(&self) -> bool {
        matches!(
            self,
            Error::OutOfDomain { .. }
                | Error::StencilOutOfDomain { .. }
                | Error::SingularPoint { .. }
                | Error::StartSingular { .. }
                | Error::BeyondBlowup { .. }
                | Error::RootNotBracketed { .. }
                | Error::ValidityViolated { .. }
                | Error::BranchUndefined { .. }
        )
    }
}
