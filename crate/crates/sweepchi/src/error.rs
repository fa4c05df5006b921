use thiserror::Error;

/// Crate-wide error type.
///
/// The `Degenerate*`, `InteriorCriticalOnBoundary`, `NonTransverseSection`
/// and `PoleOnBoundary` variants all signal a non-generic sweep direction;
/// [`Error::is_genericity_failure`] groups them so callers can retry with a
/// perturbed direction instead of failing outright.
#[derive(Debug, Error)]
pub enum Error {
    #[error("degenerate chart: |P_s x P_t| = {norm:.3e} at (s={s}, t={t})")]
    DegenerateChart { s: f64, t: f64, norm: f64 },

    #[error("singular curve point: |velocity| = {speed:.3e} at tau = {tau}")]
    SingularCurvePoint { tau: f64, speed: f64 },

    #[error("non-transverse section: |<u,n>| = {un:.3e} below tolerance")]
    NonTransverseSection { un: f64 },

    #[error("tangential projection undefined: u is parallel to the surface normal")]
    ProjectionUndefined,

    #[error("point lies on a boundary curve (distance {dist:.3e})")]
    OnBoundary { dist: f64 },

    #[error("scene parse error: {0}")]
    Parse(String),

    #[error("scene validation failed: {0}")]
    Validation(String),

    #[error("degenerate interior tangency: |K| = {k:.3e} at (s={s}, t={t})")]
    DegenerateTangency { s: f64, t: f64, k: f64 },

    #[error("degenerate boundary tangency: {reason} (curve {curve}, tau {tau})")]
    DegenerateBoundaryTangency {
        curve: usize,
        tau: f64,
        reason: String,
    },

    #[error("height function critical on the boundary: |<u,N>| = {un} at curve {curve}, tau {tau}")]
    InteriorCriticalOnBoundary { curve: usize, tau: f64, un: f64 },

    #[error("no generic direction found after {attempts} attempts: {}", reasons.join("; "))]
    GenericityExhausted {
        attempts: usize,
        reasons: Vec<String>,
    },

    #[error("tangency sum {value} is not within {tol:.1e} of an integer (missed tangency?)")]
    NonIntegralResult { value: f64, tol: f64 },

    #[error("sign coherence violated at {context}: {detail}")]
    SignIncoherence { context: String, detail: String },

    #[error("cell complex resolution {resolution} too coarse: {reason}")]
    ResolutionTooCoarse { resolution: usize, reason: String },

    #[error("sweep pole within {dist:.3e} of the boundary")]
    PoleOnBoundary { dist: f64 },

    #[error("degenerate meridian tangency: |k_g| = {kg:.3e} at curve {curve}, tau {tau}")]
    DegenerateMeridianTangency { curve: usize, tau: f64, kg: f64 },

    #[error("operation requires {expected}, scene surface is {found}")]
    UnsupportedSurface { expected: String, found: String },

    #[error("invalid direction: {0}")]
    InvalidDirection(String),

    #[error("I/O error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    /// True for failures that mean "this direction is non-generic, perturb
    /// and retry", as opposed to hard errors.
    pub fn is_genericity_failure(&self) -> bool {
        matches!(
            self,
            Error::DegenerateTangency { .. }
                | Error::DegenerateBoundaryTangency { .. }
                | Error::InteriorCriticalOnBoundary { .. }
                | Error::NonTransverseSection { .. }
                | Error::PoleOnBoundary { .. }
                | Error::DegenerateMeridianTangency { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
