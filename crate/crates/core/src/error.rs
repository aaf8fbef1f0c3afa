use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A parameter lies outside the region where the object is defined
    /// (non-positive Im τ, a product base on or outside the unit circle, a
    /// height outside `(0, r)` where a square root of `[a]` is needed).
    #[error("domain error: {0}")]
    Domain(String),

    #[error("invalid argument: {0}")]
    Argument(String),

    /// A denominator vanished (within tolerance) at the evaluation point.
    #[error("pole of {what} at {at}")]
    Pole { what: &'static str, at: Complex64 },

    /// Heights violate the (extended) admissibility rule.
    #[error("inadmissible heights: {0}")]
    Admissibility(String),

    /// Two independent constructions of the same object disagreed.
    #[error("{what}: constructions disagree (residual {residual:e})")]
    Consistency { what: &'static str, residual: f64 },
}

impl Error {
    pub fn is_pole(&self) -> bool {
        matches!(self, Error::Pole { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
