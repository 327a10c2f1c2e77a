//! Scalar abstraction: all state and geometry code is generic over the
//! floating-point type through [`Real`].

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{Float, FloatConst, FromPrimitive};

/// Floating-point scalar used throughout the crate (`f32` or `f64`).
///
/// The acceptance tolerances in the test suites assume `f64`; `f32` is
/// supported for cheap sweeps where 1e-6-level accuracy suffices.
pub trait Real: Float + FloatConst + FromPrimitive + Sum + Debug + Display + 'static {
    /// Converts an `f64` constant, rounding to the target precision.
    fn of(value: f64) -> Self {
        Self::from_f64(value).expect("finite f64 constant")
    }

    /// Converts a count (grid size, step index) into the scalar type.
    fn from_count(value: usize) -> Self {
        Self::from_usize(value).expect("count representable as float")
    }
}

impl Real for f32 {}
impl Real for f64 {}
