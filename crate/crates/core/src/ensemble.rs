//! The pure-state mixture over fault words: exact enumeration with optional
//! branch merging, seeded Monte Carlo trajectories, and conversion to the
//! six-parameter density form.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::density::SymmetricDensity;
use crate::error::{Error, Result};
use crate::reduced::ReducedPureState;
use crate::scalar::Real;
use crate::space::SearchSpace;

/// One component of the mixture: a fault-word probability, the evolved
/// state, and the word length (the number of steps taken).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Branch<F> {
    pub weight: F,
    pub state: ReducedPureState<F>,
    pub word_length: usize,
}

/// Probabilistic mixture of reduced pure states indexed by fault words.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedMixture<F> {
    branches: Vec<Branch<F>>,
}

impl<F: Real> WeightedMixture<F> {
    /// Enumerates both fault outcomes per step, weights `(1-eps, eps)`.
    ///
    /// Branches whose sphere points lie within `merge_tol` (Euclidean) of an
    /// earlier branch are merged into it, weights summed; the representative
    /// is the first branch in the deterministic sphere-point order. Zero
    /// tolerance keeps every distinct word (2^t branches for `0 < eps < 1`).
    /// Fails rather than truncating when the merged count would exceed
    /// `max_branches`.
    pub fn evolve_exact(
        space: &SearchSpace<F>,
        steps: usize,
        merge_tol: F,
        max_branches: usize,
    ) -> Result<Self> {
        if max_branches == 0 {
            return Err(Error::Domain("max_branches must be at least 1".into()));
        }
        let eps = space.fault_prob();
        let mut branches = vec![Branch {
            weight: F::one(),
            state: ReducedPureState::uniform(space),
            word_length: 0,
        }];
        for t in 0..steps {
            let mut children: Vec<Branch<F>> = Vec::with_capacity(branches.len() * 2);
            for parent in &branches {
                let state = parent.state.drift_checked(space, t);
                if eps < F::one() {
                    children.push(Branch {
                        weight: parent.weight * (F::one() - eps),
                        state: state.step(space, false),
                        word_length: t + 1,
                    });
                }
                if eps > F::zero() {
                    children.push(Branch {
                        weight: parent.weight * eps,
                        state: state.step(space, true),
                        word_length: t + 1,
                    });
                }
            }
            branches = merge_branches(children, space, merge_tol);
            if branches.len() > max_branches {
                return Err(Error::BranchExplosion {
                    count: branches.len(),
                    cap: max_branches,
                });
            }
        }
        Ok(Self { branches })
    }

    /// Wraps a caller-built branch list (used by tests and the oracle side).
    pub fn from_branches(branches: Vec<Branch<F>>) -> Self {
        Self { branches }
    }

    pub fn branches(&self) -> &[Branch<F>] {
        &self.branches
    }

    pub fn len(&self) -> usize {
        self.branches.len()
    }

    pub fn is_empty(&self) -> bool {
        self.branches.is_empty()
    }

    pub fn total_weight(&self) -> F {
        self.branches.iter().map(|b| b.weight).sum()
    }

    /// Weighted sum of outer products, collapsed to the six parameters:
    /// `a = sum w beta^2`, `a' = sum w beta gamma`, `b = sum w gamma^2`,
    /// `c = sum w alpha beta`, `d' = sum w alpha gamma`, `d = sum w alpha^2`.
    pub fn to_density(&self, _space: &SearchSpace<F>) -> SymmetricDensity<F> {
        let mut rho = SymmetricDensity {
            a: F::zero(),
            a_prime: F::zero(),
            b: F::zero(),
            c: F::zero(),
            d_prime: F::zero(),
            d: F::zero(),
        };
        for br in &self.branches {
            let (w, s) = (br.weight, br.state);
            rho.a = rho.a + w * s.beta() * s.beta();
            rho.a_prime = rho.a_prime + w * s.beta() * s.gamma();
            rho.b = rho.b + w * s.gamma() * s.gamma();
            rho.c = rho.c + w * s.alpha() * s.beta();
            rho.d_prime = rho.d_prime + w * s.alpha() * s.gamma();
            rho.d = rho.d + w * s.alpha() * s.alpha();
        }
        rho
    }
}

/// Sorts children by sphere point and folds together runs that stay within
/// `merge_tol` of the run's first (representative) point.
fn merge_branches<F: Real>(
    children: Vec<Branch<F>>,
    space: &SearchSpace<F>,
    merge_tol: F,
) -> Vec<Branch<F>> {
    if merge_tol <= F::zero() || children.len() < 2 {
        return children;
    }
    let mut keyed: Vec<(Branch<F>, crate::reduced::SpherePoint<F>)> = children
        .into_iter()
        .map(|b| {
            let p = b.state.to_sphere(space);
            (b, p)
        })
        .collect();
    keyed.sort_by(|(_, p), (_, q)| {
        (p.x, p.y, p.z)
            .partial_cmp(&(q.x, q.y, q.z))
            .expect("finite sphere points")
    });
    let mut merged: Vec<(Branch<F>, crate::reduced::SpherePoint<F>)> = Vec::with_capacity(keyed.len());
    for (branch, point) in keyed {
        match merged.last_mut() {
            Some((rep, rep_point)) if rep_point.distance(&point) < merge_tol => {
                rep.weight = rep.weight + branch.weight;
            }
            _ => merged.push((branch, point)),
        }
    }
    merged.into_iter().map(|(b, _)| b).collect()
}

/// Evolves one trajectory with an independent Bernoulli(`fault_prob`) fault
/// flag per step.
///
/// RNG contract: a ChaCha8 generator seeded with `base_seed`, with the
/// word-aligned stream set to `trajectory_index`, so sweeps over trajectory
/// indices are reproducible and safe to evaluate in parallel.
pub fn sample_trajectory<F: Real>(
    space: &SearchSpace<F>,
    steps: usize,
    base_seed: u64,
    trajectory_index: u64,
) -> ReducedPureState<F> {
    let mut rng = ChaCha8Rng::seed_from_u64(base_seed);
    rng.set_stream(trajectory_index);
    let eps = space
        .fault_prob()
        .to_f64()
        .expect("fault probability convertible to f64");
    let mut state = ReducedPureState::uniform(space);
    for t in 0..steps {
        let fault = rng.random::<f64>() < eps;
        state = state.drift_checked(space, t).step(space, fault);
    }
    state
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn space(n: usize, k: usize, p: f64) -> SearchSpace<f64> {
        SearchSpace::new(n, k, p).unwrap()
    }

    #[test]
    fn zero_steps_is_the_uniform_branch() {
        let sp = space(16, 3, 0.4);
        let mix = WeightedMixture::evolve_exact(&sp, 0, 0.0, 16).unwrap();
        assert_eq!(mix.len(), 1);
        assert_eq!(mix.branches()[0].weight, 1.0);
        assert_eq!(mix.branches()[0].word_length, 0);
        assert_eq!(mix.branches()[0].state, ReducedPureState::uniform(&sp));
    }

    #[test]
    fn one_step_branches_and_weights() {
        let sp = space(16, 3, 0.2);
        let mix = WeightedMixture::evolve_exact(&sp, 1, 0.0, 16).unwrap();
        assert_eq!(mix.len(), 2);
        let u = ReducedPureState::uniform(&sp);
        assert_abs_diff_eq!(mix.branches()[0].weight, 0.8, epsilon = 1e-15);
        assert_eq!(mix.branches()[0].state, u.step(&sp, false));
        assert_abs_diff_eq!(mix.branches()[1].weight, 0.2, epsilon = 1e-15);
        assert_eq!(mix.branches()[1].state, u.step(&sp, true));
        // the skipped sign flip leaves the faulty amplitude behind: after
        // diffusion it ends up strictly below the no-fault branch's
        assert!(mix.branches()[1].state.gamma() < mix.branches()[0].state.gamma());
    }

    #[test]
    fn degenerate_probabilities_keep_one_branch() {
        for p in [0.0, 1.0] {
            let sp = space(16, 2, p);
            let mix = WeightedMixture::evolve_exact(&sp, 8, 0.0, 16).unwrap();
            assert_eq!(mix.len(), 1);
            assert_eq!(mix.branches()[0].weight, 1.0);
        }
    }

    #[test]
    fn branch_count_grows_exponentially_without_merging() {
        let sp = space(64, 3, 0.3);
        let mix = WeightedMixture::evolve_exact(&sp, 12, 0.0, 1 << 12).unwrap();
        assert_eq!(mix.len(), 4096);
        assert_abs_diff_eq!(mix.total_weight(), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn exact_enumeration_matches_density_evolution() {
        let sp = space(64, 3, 0.3);
        let mix = WeightedMixture::evolve_exact(&sp, 12, 0.0, 1 << 12).unwrap();
        let mut rho = SymmetricDensity::uniform(&sp);
        for _ in 0..12 {
            rho = rho.step(&sp);
        }
        assert!(mix.to_density(&sp).max_abs_diff(&rho) <= 1e-12);
    }

    #[test]
    fn branch_explosion_is_an_error() {
        let sp = space(64, 3, 0.5);
        let r = WeightedMixture::evolve_exact(&sp, 10, 0.0, 100);
        assert!(matches!(r, Err(Error::BranchExplosion { .. })));
    }

    #[test]
    fn merging_sums_weights_and_preserves_total() {
        let sp = space(64, 3, 0.5);
        // a coarse tolerance forces real merging
        let mix = WeightedMixture::evolve_exact(&sp, 14, 1e-3, 1 << 20).unwrap();
        assert!(mix.len() < 1 << 14);
        assert_abs_diff_eq!(mix.total_weight(), 1.0, epsilon = 1e-12);
        for br in mix.branches() {
            assert!(br.weight > 0.0);
            assert!(br.state.norm_error(&sp) <= 1e-12);
            assert_eq!(br.word_length, 14);
        }
    }

    #[test]
    fn hand_expanded_single_step_mixture() {
        // Pre-diffusion two-branch mixture after one query: weights
        // (1-eps, eps), the faulted branch with gamma un-negated. Collapsing
        // the outer products gives
        // (1/n, (1-2 eps)/n, 1/n, -1/n, -(1-2 eps)/n, 1/n),
        // which must also equal the faulty-query channel on the uniform
        // density.
        let eps = 0.2;
        let sp = space(16, 3, eps);
        let u = ReducedPureState::uniform(&sp);
        let mix = WeightedMixture::from_branches(vec![
            Branch {
                weight: 1.0 - eps,
                state: u.apply_query(&sp, false),
                word_length: 1,
            },
            Branch {
                weight: eps,
                state: u.apply_query(&sp, true),
                word_length: 1,
            },
        ]);
        let rho = mix.to_density(&sp);
        let n = 16.0;
        assert_abs_diff_eq!(rho.a, 1.0 / n, epsilon = 1e-15);
        assert_abs_diff_eq!(rho.a_prime, (1.0 - 2.0 * eps) / n, epsilon = 1e-15);
        assert_abs_diff_eq!(rho.b, 1.0 / n, epsilon = 1e-15);
        assert_abs_diff_eq!(rho.c, -1.0 / n, epsilon = 1e-15);
        assert_abs_diff_eq!(rho.d_prime, -(1.0 - 2.0 * eps) / n, epsilon = 1e-15);
        assert_abs_diff_eq!(rho.d, 1.0 / n, epsilon = 1e-15);

        let channel = SymmetricDensity::uniform(&sp).apply_faulty_query(&sp);
        assert!(rho.max_abs_diff(&channel) <= 1e-15);
    }

    #[test]
    fn single_uniform_branch_density() {
        let sp = space(16, 3, 0.2);
        let mix = WeightedMixture::from_branches(vec![Branch {
            weight: 1.0,
            state: ReducedPureState::uniform(&sp),
            word_length: 0,
        }]);
        let rho = mix.to_density(&sp);
        for v in [rho.a, rho.a_prime, rho.b, rho.c, rho.d_prime, rho.d] {
            assert_abs_diff_eq!(v, 1.0 / 16.0, epsilon = 1e-15);
        }
        assert_abs_diff_eq!(rho.trace(&sp), 1.0, epsilon = 1e-12);
    }

    #[test]
    fn trajectory_without_faults_is_deterministic_run() {
        let sp = space(64, 3, 0.0);
        for seed in [0u64, 7, 123] {
            let sampled = sample_trajectory(&sp, 25, seed, 0);
            let mut s = ReducedPureState::uniform(&sp);
            for _ in 0..25 {
                s = s.step(&sp, false);
            }
            assert_eq!(sampled, s);
        }
    }

    #[test]
    fn trajectory_with_certain_faults_matches_all_ones_word() {
        let sp = space(64, 3, 1.0);
        let sampled = sample_trajectory(&sp, 25, 99, 3);
        let mix = WeightedMixture::evolve_exact(&sp, 25, 0.0, 4).unwrap();
        assert_eq!(mix.len(), 1);
        assert_eq!(sampled, mix.branches()[0].state);
    }

    #[test]
    fn trajectories_are_reproducible_and_stream_dependent() {
        let sp = space(64, 3, 0.5);
        let a = sample_trajectory(&sp, 30, 42, 0);
        let b = sample_trajectory(&sp, 30, 42, 0);
        assert_eq!(a, b);
        let c = sample_trajectory(&sp, 30, 42, 1);
        assert_ne!(a, c);
    }
}
