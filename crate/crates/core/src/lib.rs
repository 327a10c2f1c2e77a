//! Simulation and bound verification for Grover search when one marked
//! element answers queries unreliably.
//!
//! A search space holds `n` items with `k` marked; the last marked element
//! is *faulty*: each query fails to flag it with probability `p`. Everything
//! exploits the permutation symmetry among unmarked items and among
//! non-faulty marked items:
//!
//! - [`reduced`]: three-amplitude pure states, O(1) per step, and their
//!   image on the unit sphere;
//! - [`density`]: the six-parameter symmetric density matrix, its limiting
//!   state with equal thirds, and trace-distance convergence metrics;
//! - [`ensemble`]: exact fault-word enumeration and seeded Monte Carlo
//!   trajectories;
//! - [`geometry`]: Napier's rules, the fault-displacement formula, speed
//!   lower bounds and the quadrature bounds behind the search-time
//!   constants;
//! - [`oracle`]: dense brute-force references used by the differential
//!   tests.
//!
//! All state and geometry code is generic over the scalar through [`Real`];
//! the `*64` aliases fix `f64`, which is what the stated tolerances assume.

pub mod density;
pub mod ensemble;
pub mod error;
pub mod geometry;
pub mod linalg;
pub mod oracle;
pub mod quad;
pub mod reduced;
pub mod scalar;
pub mod space;
pub mod tolerances;

pub use error::{Error, Result};
pub use scalar::Real;
pub use space::{Probabilities, SearchSpace};

pub use density::{Reduced3Matrix, SymmetricDensity};
pub use ensemble::{sample_trajectory, Branch, WeightedMixture};
pub use geometry::{
    check_corollary_one, fault_displacement, meridian_gap, meridian_gap_composite, napier,
    napier_lhs, napier_residual, projected_speed_lower, speed_lower, state_to_geodesic,
    steps_upper_bound, theorem1_constants, CorollaryOneReport, GeodesicCoords, NapierRule,
    RightTriangle, Theorem1Report,
};
pub use oracle::{enumerate_words_full, extract_symmetric, full_step, FullDensity};
pub use reduced::{clean_grover_marked_probability, ReducedPureState, SpherePoint};

/// `f64` aliases for the main domain types.
pub type SearchSpace64 = SearchSpace<f64>;
pub type ReducedPureState64 = ReducedPureState<f64>;
pub type SpherePoint64 = SpherePoint<f64>;
pub type SymmetricDensity64 = SymmetricDensity<f64>;
pub type WeightedMixture64 = WeightedMixture<f64>;
pub type FullDensity64 = FullDensity<f64>;
pub type GeodesicCoords64 = GeodesicCoords<f64>;
