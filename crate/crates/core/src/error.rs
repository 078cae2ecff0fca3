use thiserror::Error;

/// Failure categories shared by every operation in the crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GaugeError {
    /// An input lies outside the domain of the operation (zero vector, non-finite
    /// coordinate, polygon not containing the origin, ...).
    #[error("domain error: {0}")]
    Domain(String),
    /// The gauge or curve cannot provide what the operation needs, e.g. derivatives
    /// of a polygonal gauge.
    #[error("capability error: {0}")]
    Capability(String),
    /// A numerical procedure failed to reach its tolerance or hit a degenerate value.
    #[error("numeric failure: {0}")]
    Numeric(String),
    /// The circular curvature is (numerically) zero at the listed arc-length values,
    /// so the evolute is undefined there.
    #[error("circular curvature vanishes at s = {s_values:?}")]
    DegenerateCurvature { s_values: Vec<f64> },
}

pub type Result<T, E = GaugeError> = std::result::Result<T, E>;

impl GaugeError {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        GaugeError::Domain(msg.into())
    }

    pub(crate) fn capability(msg: impl Into<String>) -> Self {
        GaugeError::Capability(msg.into())
    }

    pub(crate) fn numeric(msg: impl Into<String>) -> Self {
        GaugeError::Numeric(msg.into())
    }
}
