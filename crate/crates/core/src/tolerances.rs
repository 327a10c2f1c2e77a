//! Numerical tolerances used by the library and its test suites.
//!
//! Everything here is stated for `f64`; generic code converts through
//! [`Real::of`](crate::Real::of).

/// Unit-norm / unit-trace residual allowed after a single operation.
///
/// Each step is a handful of exact-weight linear combinations, so the
/// per-step rounding stays within a few ulps of 1.
pub const NORM_TOL: f64 = 1e-12;

/// Allowed norm drift over very long runs (1e5 steps) before renormalization
/// would be considered broken.
pub const DRIFT_TOL: f64 = 1e-9;

/// Most negative eigenvalue a positive-semidefinite reduction may show.
pub const PSD_TOL: f64 = -1e-10;

/// Interval between norm checks in long pure-state runs.
pub const RENORM_INTERVAL: usize = 10_000;

/// Norm deviation that triggers a renormalization at a check point.
pub const RENORM_THRESHOLD: f64 = 1e-12;

/// Absolute tolerance requested from the adaptive quadrature backing the
/// step-count and meridian-gap bounds.
pub const QUAD_TOL: f64 = 1e-10;

/// Integrand evaluation budget for one adaptive quadrature call.
pub const QUAD_MAX_EVALS: usize = 1 << 22;

/// Spread allowed between same-role entries when collapsing a full matrix
/// to the six-parameter form.
pub const PATTERN_SPREAD_TOL: f64 = 1e-8;
