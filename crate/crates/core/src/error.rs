use num_complex::Complex64;
use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// A point, vector, or parameter failed validation before any computation.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("point {point} lies outside the {domain}")]
    OutsideDomain { point: Complex64, domain: String },

    #[error("adaptive quadrature did not converge on [{lo}, {hi}]: achieved error estimate {estimate:e}")]
    QuadratureNonConvergence { lo: f64, hi: f64, estimate: f64 },

    #[error("finite-difference stencil at t = {t} with step {step:e} leaves the domain")]
    StencilOutsideDomain { t: f64, step: f64 },

    #[error("weight denominator vanishes inside the interval ({lo}, {hi})")]
    DenominatorVanishes { lo: f64, hi: f64 },

    #[error("t = {0} is a singularity of the weight family")]
    Singularity(f64),

    #[error("trajectory has {0} accepted steps; at least 4 are required")]
    TrajectoryTooShort(usize),

    #[error("{function} produced {value}, outside its declared codomain {codomain}")]
    CodomainViolation {
        function: String,
        value: Complex64,
        codomain: String,
    },

    #[error("configuration is invalid:\n  {}", .0.join("\n  "))]
    Config(Vec<String>),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}
