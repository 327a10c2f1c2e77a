//! Problem instance: `n` items, `k` marked (the last marked item is faulty),
//! and the per-query fault probability.

use crate::error::{Error, Result};
use crate::scalar::Real;

/// A search instance with one faulty marked element.
///
/// Items split into three permutation-symmetric roles: `n - k` unmarked,
/// `k - 1` non-faulty marked, and one faulty marked element whose query
/// answer is skipped with probability `fault_prob`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SearchSpace<F> {
    n: usize,
    k: usize,
    fault_prob: F,
}

impl<F: Real> SearchSpace<F> {
    /// Builds an instance, enforcing `1 <= k <= n` and `0 <= fault_prob <= 1`.
    pub fn new(n: usize, k: usize, fault_prob: F) -> Result<Self> {
        if n == 0 || k == 0 || k > n {
            return Err(Error::InvalidSpace(format!(
                "need 1 <= k <= n, got n={n}, k={k}"
            )));
        }
        if fault_prob < F::zero() || fault_prob > F::one() || !fault_prob.is_finite() {
            return Err(Error::InvalidSpace(format!(
                "fault probability must lie in [0, 1], got {fault_prob}"
            )));
        }
        Ok(Self { n, k, fault_prob })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn fault_prob(&self) -> F {
        self.fault_prob
    }

    /// Number of unmarked items, `n - k`.
    pub fn unmarked(&self) -> usize {
        self.n - self.k
    }

    /// Number of non-faulty marked items, `k - 1`.
    pub fn nonfaulty(&self) -> usize {
        self.k - 1
    }

    /// Per-step rotation angle of the fault-free walk, `2 asin(sqrt(k/n))`.
    pub fn grover_angle(&self) -> F {
        let ratio = F::from_count(self.k) / F::from_count(self.n);
        F::of(2.0) * ratio.sqrt().asin()
    }

    /// Inclination `A = atan(1 / sqrt(k - 1))` between the fault-free
    /// trajectory circle and the equator. Rejects `k = 1`, where the angle
    /// degenerates to `pi/2` and every bound below assumes `A <= pi/4`.
    pub fn inclination(&self) -> Result<F> {
        if self.k < 2 {
            return Err(Error::Degenerate(
                "inclination needs at least one non-faulty marked item (k >= 2)".into(),
            ));
        }
        Ok(F::from_count(self.k - 1).sqrt().recip().atan())
    }
}

/// Measurement statistics over the three item roles.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Probabilities<F> {
    pub unmarked: F,
    pub nonfaulty_marked: F,
    pub faulty: F,
}

impl<F: Real> Probabilities<F> {
    /// Probability of seeing any marked item (faulty or not).
    pub fn marked(&self) -> F {
        self.nonfaulty_marked + self.faulty
    }

    pub fn sum(&self) -> F {
        self.unmarked + self.nonfaulty_marked + self.faulty
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_parameters() {
        assert!(SearchSpace::new(0, 1, 0.5).is_err());
        assert!(SearchSpace::new(4, 0, 0.5).is_err());
        assert!(SearchSpace::new(4, 5, 0.5).is_err());
        assert!(SearchSpace::new(4, 2, -0.1).is_err());
        assert!(SearchSpace::new(4, 2, 1.1).is_err());
        assert!(SearchSpace::new(4, 2, f64::NAN).is_err());
        assert!(SearchSpace::new(4, 4, 1.0).is_ok());
    }

    #[test]
    fn grover_angle_small_instances() {
        let s = SearchSpace::new(4, 1, 0.0).unwrap();
        assert!((s.grover_angle() - std::f64::consts::FRAC_PI_3).abs() < 1e-15);
        let s = SearchSpace::new(4, 4, 0.0).unwrap();
        assert!((s.grover_angle() - std::f64::consts::PI).abs() < 1e-15);
    }

    #[test]
    fn grover_angle_matches_small_angle_approximation() {
        let s = SearchSpace::new(1_000_000, 1, 0.0).unwrap();
        let approx = 2.0 * (1.0f64 / 1_000_000.0).sqrt();
        assert!((s.grover_angle() - approx).abs() / approx < 1e-6);
    }

    #[test]
    fn inclination_range_and_k1_rejection() {
        let s = SearchSpace::new(8, 2, 0.5).unwrap();
        assert!((s.inclination().unwrap() - std::f64::consts::FRAC_PI_4).abs() < 1e-15);
        let s = SearchSpace::new(8, 1, 0.5).unwrap();
        assert!(matches!(s.inclination(), Err(Error::Degenerate(_))));
        for k in 2..=8usize {
            let s = SearchSpace::new(16, k, 0.5).unwrap();
            let a: f64 = s.inclination().unwrap();
            assert!(a > 0.0 && a <= std::f64::consts::FRAC_PI_4 + 1e-15);
        }
    }
}
