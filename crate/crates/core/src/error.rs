use thiserror::Error;

/// Errors surfaced by simulation, geometry and oracle routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Search-space parameters violate `1 <= k <= n` or `0 <= p <= 1`.
    #[error("invalid search space: {0}")]
    InvalidSpace(String),

    /// Operation requires `k >= 2` (or `n > k`) and got a degenerate instance.
    #[error("degenerate instance: {0}")]
    Degenerate(String),

    /// Exact fault-word enumeration exceeded the branch cap.
    #[error("branch explosion: {count} branches exceed the cap of {cap}; lower t or raise merge_tol")]
    BranchExplosion { count: usize, cap: usize },

    /// Argument outside the valid angular range, or a trig pole was hit.
    #[error("domain error: {0}")]
    Domain(String),

    /// Adaptive quadrature did not reach the requested tolerance.
    #[error("quadrature did not converge: {0}")]
    QuadratureNonConvergence(String),

    /// The integrand is singular at an endpoint of the requested interval.
    #[error("singular integrand endpoint: {0}")]
    SingularEndpoint(String),

    /// Brute-force oracle size guard (the oracle exists for correctness, not scale).
    #[error("size guard exceeded: {0}")]
    SizeGuard(String),

    /// A full matrix handed to the oracle does not fit the six-entry symmetric pattern.
    #[error("symmetric pattern violation: {0}")]
    PatternViolation(String),
}

pub type Result<T> = std::result::Result<T, Error>;
