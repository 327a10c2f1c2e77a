//! Exact O(1)-per-step evolution of the permutation-symmetric pure state.
//!
//! Every unmarked item carries the amplitude `alpha`, every non-faulty marked
//! item `beta`, and the faulty marked item `gamma`. Query and fault only flip
//! signs; diffusion is inversion about the mean. A step is query, the
//! optional fault, then diffusion.

use crate::scalar::Real;
use crate::space::{Probabilities, SearchSpace};
use crate::tolerances;

/// Three-amplitude symmetric pure state.
///
/// For `k = 1` the non-faulty sector has weight zero and `beta` is pinned
/// to `0` so that the representation stays canonical.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReducedPureState<F> {
    alpha: F,
    beta: F,
    gamma: F,
}

/// Image of a state on the unit sphere: `(alpha sqrt(n-k), beta sqrt(k-1), gamma)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpherePoint<F> {
    pub x: F,
    pub y: F,
    pub z: F,
}

impl<F: Real> SpherePoint<F> {
    pub fn dot(&self, other: &Self) -> F {
        self.x * other.x + self.y * other.y + self.z * other.z
    }

    pub fn distance(&self, other: &Self) -> F {
        let dx = self.x - other.x;
        let dy = self.y - other.y;
        let dz = self.z - other.z;
        (dx * dx + dy * dy + dz * dz).sqrt()
    }

    pub fn norm(&self) -> F {
        self.dot(self).sqrt()
    }

    /// Angle to another unit point, clamped against rounding past +-1.
    pub fn angle_to(&self, other: &Self) -> F {
        let d = self.dot(other).min(F::one()).max(-F::one());
        d.acos()
    }
}

impl<F: Real> ReducedPureState<F> {
    /// Builds a state from raw amplitudes. The caller owns the norm; for
    /// `k = 1` instances pass `beta = 0`.
    pub fn new(alpha: F, beta: F, gamma: F) -> Self {
        Self { alpha, beta, gamma }
    }

    /// The uniform superposition: every amplitude `1/sqrt(n)`. Zero-weight
    /// sectors (`n = k` for alpha, `k = 1` for beta) are pinned to zero to
    /// keep the representation canonical.
    pub fn uniform(space: &SearchSpace<F>) -> Self {
        let v = F::from_count(space.n()).sqrt().recip();
        Self {
            alpha: if space.unmarked() == 0 { F::zero() } else { v },
            beta: if space.k() == 1 { F::zero() } else { v },
            gamma: v,
        }
    }

    pub fn alpha(&self) -> F {
        self.alpha
    }

    pub fn beta(&self) -> F {
        self.beta
    }

    pub fn gamma(&self) -> F {
        self.gamma
    }

    /// `(n-k) alpha^2 + (k-1) beta^2 + gamma^2`; 1 for a physical state.
    pub fn norm_sq(&self, space: &SearchSpace<F>) -> F {
        F::from_count(space.unmarked()) * self.alpha * self.alpha
            + F::from_count(space.nonfaulty()) * self.beta * self.beta
            + self.gamma * self.gamma
    }

    pub fn norm_error(&self, space: &SearchSpace<F>) -> F {
        (self.norm_sq(space) - F::one()).abs()
    }

    /// Inversion about the mean: each amplitude `x` becomes `2 mu - x` with
    /// `mu` the mean amplitude. An involution; fixes the uniform state.
    pub fn apply_diffusion(&self, space: &SearchSpace<F>) -> Self {
        let two = F::of(2.0);
        let mu = (F::from_count(space.unmarked()) * self.alpha
            + F::from_count(space.nonfaulty()) * self.beta
            + self.gamma)
            / F::from_count(space.n());
        Self {
            alpha: if space.unmarked() == 0 {
                F::zero()
            } else {
                two * mu - self.alpha
            },
            beta: if space.k() == 1 {
                F::zero()
            } else {
                two * mu - self.beta
            },
            gamma: two * mu - self.gamma,
        }
    }

    /// The (possibly faulty) query: marked amplitudes are negated, except
    /// that the faulty item keeps its sign when the fault occurred.
    pub fn apply_query(&self, _space: &SearchSpace<F>, fault_occurred: bool) -> Self {
        Self {
            alpha: self.alpha,
            beta: -self.beta,
            gamma: if fault_occurred { self.gamma } else { -self.gamma },
        }
    }

    /// One full step: query, optional fault, then diffusion.
    pub fn step(&self, space: &SearchSpace<F>, fault_occurred: bool) -> Self {
        self.apply_query(space, fault_occurred).apply_diffusion(space)
    }

    /// Born-rule statistics `((n-k) alpha^2, (k-1) beta^2, gamma^2)`.
    pub fn measure_probs(&self, space: &SearchSpace<F>) -> Probabilities<F> {
        Probabilities {
            unmarked: F::from_count(space.unmarked()) * self.alpha * self.alpha,
            nonfaulty_marked: F::from_count(space.nonfaulty()) * self.beta * self.beta,
            faulty: self.gamma * self.gamma,
        }
    }

    pub fn to_sphere(&self, space: &SearchSpace<F>) -> SpherePoint<F> {
        SpherePoint {
            x: self.alpha * F::from_count(space.unmarked()).sqrt(),
            y: self.beta * F::from_count(space.nonfaulty()).sqrt(),
            z: self.gamma,
        }
    }

    /// Inverse of [`to_sphere`](Self::to_sphere). Zero-weight sectors
    /// (`k = n` for alpha, `k = 1` for beta) map to zero amplitudes.
    pub fn from_sphere(point: SpherePoint<F>, space: &SearchSpace<F>) -> Self {
        let alpha = if space.unmarked() == 0 {
            F::zero()
        } else {
            point.x / F::from_count(space.unmarked()).sqrt()
        };
        let beta = if space.nonfaulty() == 0 {
            F::zero()
        } else {
            point.y / F::from_count(space.nonfaulty()).sqrt()
        };
        Self {
            alpha,
            beta,
            gamma: point.z,
        }
    }

    /// Rescales the amplitudes back onto the unit sphere.
    pub fn renormalized(&self, space: &SearchSpace<F>) -> Self {
        let s = self.norm_sq(space).sqrt().recip();
        Self {
            alpha: self.alpha * s,
            beta: self.beta * s,
            gamma: self.gamma * s,
        }
    }

    /// Norm check applied every [`tolerances::RENORM_INTERVAL`] steps in long
    /// runs; renormalizes (and logs) when drift exceeds the threshold.
    pub(crate) fn drift_checked(&self, space: &SearchSpace<F>, step_index: usize) -> Self {
        if step_index == 0 || step_index % tolerances::RENORM_INTERVAL != 0 {
            return *self;
        }
        if self.norm_error(space) > F::of(tolerances::RENORM_THRESHOLD) {
            log::debug!(
                "renormalizing at step {step_index}: norm error {}",
                self.norm_error(space)
            );
            return self.renormalized(space);
        }
        *self
    }
}

/// Closed-form fault-free marked probability `sin^2((2t+1) theta/2)` with
/// `theta` the Grover angle.
pub fn clean_grover_marked_probability<F: Real>(space: &SearchSpace<F>, steps: usize) -> F {
    let theta = space.grover_angle();
    let arg = F::from_count(2 * steps + 1) * theta / F::of(2.0);
    arg.sin().powi(2)
}
