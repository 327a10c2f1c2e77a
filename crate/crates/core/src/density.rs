//! Exact evolution of the six-parameter symmetric density matrix.
//!
//! Under the role symmetry the full N x N density matrix has six distinct
//! entries: `a` (non-faulty x non-faulty), `a_prime` (non-faulty x faulty),
//! `b` (faulty diagonal), `c` (non-faulty x unmarked), `d_prime`
//! (faulty x unmarked) and `d` (unmarked x unmarked). The faulty query is a
//! sign/contraction pattern on these, diffusion a rank-structured update;
//! both are O(1) per step.

use crate::error::{Error, Result};
use crate::linalg::sym3_eigenvalues;
use crate::scalar::Real;
use crate::space::{Probabilities, SearchSpace};

/// Six distinct entries of the symmetric density matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymmetricDensity<F> {
    pub a: F,
    pub a_prime: F,
    pub b: F,
    pub c: F,
    pub d_prime: F,
    pub d: F,
}

/// The density matrix reduced to the span of the uniform non-faulty marked
/// superposition, the faulty item, and the uniform unmarked superposition.
/// Carries the full nonzero spectrum of the N x N matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Reduced3Matrix<F> {
    entries: [[F; 3]; 3],
}

impl<F: Real> Reduced3Matrix<F> {
    pub fn entries(&self) -> &[[F; 3]; 3] {
        &self.entries
    }

    pub fn trace(&self) -> F {
        self.entries[0][0] + self.entries[1][1] + self.entries[2][2]
    }

    /// Eigenvalues, ascending.
    pub fn eigenvalues(&self) -> [F; 3] {
        sym3_eigenvalues(&self.entries)
    }

    pub fn min_eigenvalue(&self) -> F {
        self.eigenvalues()[0]
    }

    /// Half the sum of absolute eigenvalues of the difference (trace distance).
    pub fn trace_distance(&self, other: &Self) -> F {
        let mut diff = [[F::zero(); 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                diff[i][j] = self.entries[i][j] - other.entries[i][j];
            }
        }
        let eig = sym3_eigenvalues(&diff);
        (eig[0].abs() + eig[1].abs() + eig[2].abs()) / F::of(2.0)
    }
}

impl<F: Real> SymmetricDensity<F> {
    /// The pure uniform start state as a density matrix: every entry `1/n`.
    pub fn uniform(space: &SearchSpace<F>) -> Self {
        let v = F::from_count(space.n()).recip();
        Self {
            a: v,
            a_prime: v,
            b: v,
            c: v,
            d_prime: v,
            d: v,
        }
    }

    /// `(k-1) a + b + (n-k) d`; 1 for a physical state.
    pub fn trace(&self, space: &SearchSpace<F>) -> F {
        F::from_count(space.nonfaulty()) * self.a + self.b + F::from_count(space.unmarked()) * self.d
    }

    /// Faulty-query channel: with `p` the fault probability,
    /// `a_prime -> -(2p-1) a_prime`, `c -> -c`, `d_prime -> (2p-1) d_prime`;
    /// diagonal entries are untouched. Trace-exact.
    pub fn apply_faulty_query(&self, space: &SearchSpace<F>) -> Self {
        let contraction = F::of(2.0) * space.fault_prob() - F::one();
        Self {
            a: self.a,
            a_prime: -contraction * self.a_prime,
            b: self.b,
            c: -self.c,
            d_prime: contraction * self.d_prime,
            d: self.d,
        }
    }

    /// Diffusion on both sides: entry `(i,j)` becomes
    /// `4V - 2V_i - 2V_j + rho_ij` with `V_i` the row averages and `V` the
    /// overall average.
    pub fn apply_diffusion(&self, space: &SearchSpace<F>) -> Self {
        let nf = F::from_count(space.nonfaulty());
        let un = F::from_count(space.unmarked());
        let n = F::from_count(space.n());
        let two = F::of(2.0);
        let four = F::of(4.0);

        let v1 = (nf * self.a + self.a_prime + un * self.c) / n;
        let vk = (nf * self.a_prime + self.b + un * self.d_prime) / n;
        let vn = (nf * self.c + self.d_prime + un * self.d) / n;
        let v = (nf * v1 + vk + un * vn) / n;

        Self {
            a: four * v - four * v1 + self.a,
            a_prime: four * v - two * v1 - two * vk + self.a_prime,
            b: four * v - four * vk + self.b,
            c: four * v - two * v1 - two * vn + self.c,
            d_prime: four * v - two * vk - two * vn + self.d_prime,
            d: four * v - four * vn + self.d,
        }
    }

    /// One step of the algorithm on the density: faulty query, then diffusion.
    pub fn step(&self, space: &SearchSpace<F>) -> Self {
        self.apply_faulty_query(space).apply_diffusion(space)
    }

    /// Diagonal readout `((n-k) d, (k-1) a, b)`.
    pub fn success_probs(&self, space: &SearchSpace<F>) -> Probabilities<F> {
        Probabilities {
            unmarked: F::from_count(space.unmarked()) * self.d,
            nonfaulty_marked: F::from_count(space.nonfaulty()) * self.a,
            faulty: self.b,
        }
    }

    /// The limiting state: equal thirds on the faulty item, the non-faulty
    /// marked superposition and the unmarked superposition; off-diagonals
    /// vanish. Requires `k >= 2` and `n > k`.
    pub fn limit_state(space: &SearchSpace<F>) -> Result<Self> {
        if space.k() < 2 {
            return Err(Error::Degenerate(
                "limit state needs a non-faulty marked item (k >= 2)".into(),
            ));
        }
        if space.unmarked() == 0 {
            return Err(Error::Degenerate(
                "limit state needs at least one unmarked item (n > k)".into(),
            ));
        }
        let third = F::of(3.0).recip();
        Ok(Self {
            a: third / F::from_count(space.nonfaulty()),
            a_prime: F::zero(),
            b: third,
            c: F::zero(),
            d_prime: F::zero(),
            d: third / F::from_count(space.unmarked()),
        })
    }

    /// Reduction to the 3x3 block carrying the nonzero spectrum.
    pub fn reduce3(&self, space: &SearchSpace<F>) -> Reduced3Matrix<F> {
        let nf = F::from_count(space.nonfaulty());
        let un = F::from_count(space.unmarked());
        let snf = nf.sqrt();
        let sun = un.sqrt();
        Reduced3Matrix {
            entries: [
                [nf * self.a, snf * self.a_prime, snf * sun * self.c],
                [snf * self.a_prime, self.b, sun * self.d_prime],
                [snf * sun * self.c, sun * self.d_prime, un * self.d],
            ],
        }
    }

    /// Trace distance to the limiting state on the 3x3 reduction.
    pub fn trace_distance_to_limit(&self, space: &SearchSpace<F>) -> Result<F> {
        let limit = Self::limit_state(space)?;
        Ok(self.reduce3(space).trace_distance(&limit.reduce3(space)))
    }

    /// Largest absolute difference over the six parameters.
    pub fn max_abs_diff(&self, other: &Self) -> F {
        (self.a - other.a)
            .abs()
            .max((self.a_prime - other.a_prime).abs())
            .max((self.b - other.b).abs())
            .max((self.c - other.c).abs())
            .max((self.d_prime - other.d_prime).abs())
            .max((self.d - other.d).abs())
    }

    /// Largest absolute off-diagonal parameter.
    pub fn max_off_diagonal(&self) -> F {
        self.a_prime.abs().max(self.c.abs()).max(self.d_prime.abs())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reduced::ReducedPureState;
    use approx::assert_abs_diff_eq;

    fn space(n: usize, k: usize, p: f64) -> SearchSpace<f64> {
        SearchSpace::new(n, k, p).unwrap()
    }

    #[test]
    fn uniform_entries_and_trace() {
        let sp = space(4, 2, 0.5);
        let r = SymmetricDensity::uniform(&sp);
        for v in [r.a, r.a_prime, r.b, r.c, r.d_prime, r.d] {
            assert_eq!(v, 0.25);
        }
        assert_abs_diff_eq!(r.trace(&sp), 1.0, epsilon = 1e-15);
    }

    #[test]
    fn uniform_reduce3_is_rank_one() {
        let sp = space(8, 3, 0.5);
        let eig = SymmetricDensity::uniform(&sp).reduce3(&sp).eigenvalues();
        assert_abs_diff_eq!(eig[0], 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(eig[1], 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(eig[2], 1.0, epsilon = 1e-12);
    }

    #[test]
    fn query_channel_sign_pattern() {
        let mut r = SymmetricDensity::uniform(&space(16, 3, 0.0));
        r.a_prime = 0.1;
        r.c = 0.05;
        r.d_prime = 0.2;

        let q = r.apply_faulty_query(&space(16, 3, 0.0));
        assert_abs_diff_eq!(q.a_prime, 0.1, epsilon = 1e-15);
        assert_abs_diff_eq!(q.c, -0.05, epsilon = 1e-15);
        assert_abs_diff_eq!(q.d_prime, -0.2, epsilon = 1e-15);

        let q = r.apply_faulty_query(&space(16, 3, 0.5));
        assert_eq!(q.a_prime, 0.0);
        assert_eq!(q.d_prime, 0.0);
        assert_abs_diff_eq!(q.c, -0.05, epsilon = 1e-15);

        let q = r.apply_faulty_query(&space(16, 3, 0.3));
        assert_abs_diff_eq!(q.a_prime, 0.04, epsilon = 1e-15);
        assert_abs_diff_eq!(q.d_prime, -0.08, epsilon = 1e-15);
    }

    #[test]
    fn diffusion_fixes_uniform_and_is_involution() {
        let sp = space(10, 3, 0.2);
        let u = SymmetricDensity::uniform(&sp);
        assert!(u.apply_diffusion(&sp).max_abs_diff(&u) < 1e-15);

        let r = SymmetricDensity {
            a: 0.03,
            a_prime: -0.01,
            b: 0.2,
            c: 0.002,
            d_prime: -0.005,
            d: (1.0 - 2.0 * 0.03 - 0.2) / 7.0,
        };
        let back = r.apply_diffusion(&sp).apply_diffusion(&sp);
        assert!(back.max_abs_diff(&r) <= 1e-12);
    }

    #[test]
    fn zero_fault_step_matches_pure_grover() {
        let sp = space(32, 4, 0.0);
        let mut rho = SymmetricDensity::uniform(&sp);
        let mut psi = ReducedPureState::uniform(&sp);
        for _ in 0..60 {
            rho = rho.step(&sp);
            psi = psi.step(&sp, false);
            let mp = psi.measure_probs(&sp);
            let dp = rho.success_probs(&sp);
            assert_abs_diff_eq!(mp.unmarked, dp.unmarked, epsilon = 1e-10);
            assert_abs_diff_eq!(mp.nonfaulty_marked, dp.nonfaulty_marked, epsilon = 1e-10);
            assert_abs_diff_eq!(mp.faulty, dp.faulty, epsilon = 1e-10);
        }
    }

    #[test]
    fn query_channel_never_moves_the_diagonal() {
        // The faulty query only touches signs and off-diagonal contractions,
        // so measurement statistics taken right after a query are identical
        // for every fault probability; the two step conventions (diffusion
        // first or query first) differ by exactly this half-step.
        let sp0 = space(64, 3, 0.0);
        let base = SymmetricDensity::uniform(&sp0)
            .apply_faulty_query(&sp0)
            .success_probs(&sp0);
        for p in [0.1, 0.5, 0.9, 1.0] {
            let sp = space(64, 3, p);
            let mut rho = SymmetricDensity::uniform(&sp);
            for _ in 0..5 {
                let q = rho.apply_faulty_query(&sp);
                let before = rho.success_probs(&sp);
                let after = q.success_probs(&sp);
                assert_abs_diff_eq!(before.unmarked, after.unmarked, epsilon = 1e-15);
                assert_abs_diff_eq!(before.nonfaulty_marked, after.nonfaulty_marked, epsilon = 1e-15);
                assert_abs_diff_eq!(before.faulty, after.faulty, epsilon = 1e-15);
                rho = q.apply_diffusion(&sp);
            }
        }
        let got = SymmetricDensity::uniform(&sp0)
            .apply_faulty_query(&sp0)
            .success_probs(&sp0);
        assert_abs_diff_eq!(got.marked(), base.marked(), epsilon = 1e-15);
    }

    #[test]
    fn success_probs_examples() {
        let sp = space(100, 3, 0.5);
        let m = SymmetricDensity::uniform(&sp).success_probs(&sp);
        assert_abs_diff_eq!(m.unmarked, 0.97, epsilon = 1e-12);
        assert_abs_diff_eq!(m.nonfaulty_marked, 0.02, epsilon = 1e-12);
        assert_abs_diff_eq!(m.faulty, 0.01, epsilon = 1e-12);
    }

    #[test]
    fn limit_state_structure() {
        let sp = space(8, 3, 0.5);
        let lim = SymmetricDensity::limit_state(&sp).unwrap();
        assert_abs_diff_eq!(lim.a, 1.0 / 6.0, epsilon = 1e-15);
        assert_abs_diff_eq!(lim.b, 1.0 / 3.0, epsilon = 1e-15);
        assert_abs_diff_eq!(lim.d, 1.0 / 15.0, epsilon = 1e-15);
        assert_eq!((lim.a_prime, lim.c, lim.d_prime), (0.0, 0.0, 0.0));

        let m = lim.success_probs(&sp);
        for v in [m.unmarked, m.nonfaulty_marked, m.faulty] {
            assert_abs_diff_eq!(v, 1.0 / 3.0, epsilon = 1e-15);
        }
        let eig = lim.reduce3(&sp).eigenvalues();
        for e in eig {
            assert_abs_diff_eq!(e, 1.0 / 3.0, epsilon = 1e-15);
        }
    }

    #[test]
    fn limit_state_rejects_degenerate_instances() {
        assert!(matches!(
            SymmetricDensity::limit_state(&space(8, 1, 0.5)),
            Err(Error::Degenerate(_))
        ));
        assert!(matches!(
            SymmetricDensity::limit_state(&space(3, 3, 0.5)),
            Err(Error::Degenerate(_))
        ));
    }

    #[test]
    fn trace_distance_properties() {
        let sp = space(100, 3, 0.5);
        let lim = SymmetricDensity::limit_state(&sp).unwrap();
        assert_abs_diff_eq!(lim.trace_distance_to_limit(&sp).unwrap(), 0.0, epsilon = 1e-14);

        // any pure state sits at trace distance exactly 2/3 from the
        // maximally mixed 3x3 limit
        let d = SymmetricDensity::uniform(&sp)
            .trace_distance_to_limit(&sp)
            .unwrap();
        assert_abs_diff_eq!(d, 2.0 / 3.0, epsilon = 1e-12);

        let sp1 = space(100, 1, 0.5);
        assert!(SymmetricDensity::uniform(&sp1)
            .trace_distance_to_limit(&sp1)
            .is_err());
    }

    #[test]
    fn running_minimum_of_distance_is_monotone() {
        let sp = space(64, 3, 0.5);
        let mut rho = SymmetricDensity::uniform(&sp);
        let mut best = f64::INFINITY;
        let mut envelope = Vec::new();
        for _ in 0..2000 {
            rho = rho.step(&sp);
            best = best.min(rho.trace_distance_to_limit(&sp).unwrap());
            envelope.push(best);
        }
        assert!(envelope.windows(2).all(|w| w[1] <= w[0]));
    }

    #[test]
    fn trace_is_preserved_per_step() {
        for p in [0.0, 0.25, 0.5, 0.75, 1.0] {
            let sp = space(48, 5, p);
            let mut rho = SymmetricDensity::uniform(&sp);
            for _ in 0..500 {
                rho = rho.step(&sp);
                assert!((rho.trace(&sp) - 1.0).abs() <= 1e-12);
            }
        }
    }
}
