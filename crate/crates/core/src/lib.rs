//! Differential geometry of planar curves in gauge planes: the plane equipped with
//! a convex distance function that need not be symmetric.
//!
//! The crate covers gauges and their associated gauges, Birkhoff orthogonality,
//! the Minkowski, normal, circular and arc-length curvatures together with the
//! right and left normal fields, and evolutes and involutes with executable
//! round-trip checks.

pub mod arclength;
pub mod associated;
pub mod curvature;
pub mod curve;
pub mod error;
pub mod evolute;
pub mod gauge;
pub mod numeric;
pub mod vec2;

pub use arclength::{arc_length, ArcLengthTable, DEFAULT_QUADRATURE_TOL};
pub use associated::{
    associated_eval, birkhoff_orthogonal, double_associated_residual, AssociatedGauge, AssociatedMethod,
    DoubleAssociated, DEFAULT_BIRKHOFF_TOL,
};
pub use curvature::{
    arc_length_curvature, circular_curvature, left_normal, minkowski_curvature, normal_curvature, profile,
    right_normal, Branch, CurvatureEngine, CurvatureProfile, CurvatureSample,
};
pub use curve::{DerivativeMode, ParamCurve, TrigPoly};
pub use error::{GaugeError, Result};
pub use evolute::{
    evolute, evolute_curve, evolute_of_involute_roundtrip, evolute_with, involute, involute_curve,
    involute_of_evolute_roundtrip, involute_with, Reverse, RoundTripCase, RoundTripOptions, RoundTripReport,
    SampledCurve, SampledPoint, DEFAULT_K_MIN,
};
pub use gauge::{
    polygon_polar, ConvexPolygon, DEFAULT_VALIDATION_SEED, Gauge, GaugeKind, GradSpec, ValidationReport,
};
pub use vec2::{det_form, Vec2};

/// Library version.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
