//! Brute-force reference implementations at small N.
//!
//! Everything here works on dense n x n matrices and unreduced n-vectors,
//! sharing no formulas with the reduced modules; it is the ground truth the
//! differential tests compare against. Sizes are capped: the oracle exists
//! for correctness, not scale.

use crate::density::SymmetricDensity;
use crate::error::{Error, Result};
use crate::linalg::jacobi_eigenvalues;
use crate::scalar::Real;
use crate::space::SearchSpace;
use crate::tolerances;

/// Hard cap on the oracle matrix size.
pub const MAX_ORACLE_N: usize = 256;
/// Hard cap on the fault-word length in [`enumerate_words_full`].
pub const MAX_ORACLE_WORD_LEN: usize = 16;
/// Matrix size cap for [`enumerate_words_full`].
pub const MAX_ENUMERATION_N: usize = 64;

/// Dense real symmetric density matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct FullDensity<F> {
    n: usize,
    data: Vec<F>,
}

impl<F: Real> FullDensity<F> {
    /// The pure uniform state: every entry `1/n`.
    pub fn uniform(n: usize) -> Result<Self> {
        guard_n(n)?;
        Ok(Self {
            n,
            data: vec![F::from_count(n).recip(); n * n],
        })
    }

    /// Expands the six-parameter form into the full matrix. Marked items
    /// occupy indices `0..k`, the faulty one at `k-1`.
    pub fn from_symmetric(rho: &SymmetricDensity<F>, space: &SearchSpace<F>) -> Result<Self> {
        let n = space.n();
        guard_n(n)?;
        let k = space.k();
        let mut data = vec![F::zero(); n * n];
        for i in 0..n {
            for j in 0..n {
                data[i * n + j] = match (role(i, k), role(j, k)) {
                    (Role::NonFaulty, Role::NonFaulty) => rho.a,
                    (Role::NonFaulty, Role::Faulty) | (Role::Faulty, Role::NonFaulty) => rho.a_prime,
                    (Role::Faulty, Role::Faulty) => rho.b,
                    (Role::NonFaulty, Role::Unmarked) | (Role::Unmarked, Role::NonFaulty) => rho.c,
                    (Role::Faulty, Role::Unmarked) | (Role::Unmarked, Role::Faulty) => rho.d_prime,
                    (Role::Unmarked, Role::Unmarked) => rho.d,
                };
            }
        }
        Ok(Self { n, data })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entry(&self, i: usize, j: usize) -> F {
        self.data[i * self.n + j]
    }

    pub fn trace(&self) -> F {
        (0..self.n).map(|i| self.entry(i, i)).sum()
    }

    pub fn symmetry_error(&self) -> F {
        let mut worst = F::zero();
        for i in 0..self.n {
            for j in i + 1..self.n {
                worst = worst.max((self.entry(i, j) - self.entry(j, i)).abs());
            }
        }
        worst
    }

    pub fn max_abs_diff(&self, other: &Self) -> F {
        assert_eq!(self.n, other.n);
        self.data
            .iter()
            .zip(other.data.iter())
            .map(|(a, b)| (*a - *b).abs())
            .fold(F::zero(), F::max)
    }

    /// Full spectrum via Jacobi sweeps, ascending.
    pub fn eigenvalues(&self) -> Vec<F> {
        jacobi_eigenvalues(&self.data, self.n)
    }

    pub fn min_eigenvalue(&self) -> F {
        self.eigenvalues()[0]
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Role {
    NonFaulty,
    Faulty,
    Unmarked,
}

fn role(index: usize, k: usize) -> Role {
    if index + 1 < k {
        Role::NonFaulty
    } else if index + 1 == k {
        Role::Faulty
    } else {
        Role::Unmarked
    }
}

fn guard_n(n: usize) -> Result<()> {
    if n == 0 || n > MAX_ORACLE_N {
        return Err(Error::SizeGuard(format!(
            "oracle matrices are capped at n <= {MAX_ORACLE_N}, got {n}"
        )));
    }
    Ok(())
}

fn diffusion_matrix<F: Real>(n: usize) -> Vec<F> {
    let two_over_n = F::of(2.0) / F::from_count(n);
    let mut d = vec![two_over_n; n * n];
    for i in 0..n {
        d[i * n + i] = d[i * n + i] - F::one();
    }
    d
}

fn matmul<F: Real>(a: &[F], b: &[F], n: usize) -> Vec<F> {
    let mut out = vec![F::zero(); n * n];
    for i in 0..n {
        for l in 0..n {
            let ail = a[i * n + l];
            if ail == F::zero() {
                continue;
            }
            let row = &b[l * n..(l + 1) * n];
            let dst = &mut out[i * n..(i + 1) * n];
            for (o, v) in dst.iter_mut().zip(row.iter()) {
                *o = *o + ail * *v;
            }
        }
    }
    out
}

/// Marked-sign vectors: `signs_all` flips all k marked items, `signs_nonfaulty`
/// flips only the k-1 non-faulty ones.
fn query_signs<F: Real>(space: &SearchSpace<F>) -> (Vec<F>, Vec<F>) {
    let n = space.n();
    let k = space.k();
    let mut all = vec![F::one(); n];
    let mut nonfaulty = vec![F::one(); n];
    for v in all.iter_mut().take(k) {
        *v = -F::one();
    }
    for v in nonfaulty.iter_mut().take(k - 1) {
        *v = -F::one();
    }
    (all, nonfaulty)
}

/// One step of the faulty-query channel followed by diffusion, computed as
/// dense matrix algebra:
/// `rho -> D [ (1-p) Q rho Q + p Q' rho Q' ] D`.
pub fn full_step<F: Real>(rho: &FullDensity<F>, space: &SearchSpace<F>) -> Result<FullDensity<F>> {
    let n = space.n();
    guard_n(n)?;
    if rho.n != n {
        return Err(Error::SizeGuard(format!(
            "matrix size {} does not match the search space n = {n}",
            rho.n
        )));
    }
    let p = space.fault_prob();
    let (signs_all, signs_nf) = query_signs(space);

    let mut channel = vec![F::zero(); n * n];
    for i in 0..n {
        for j in 0..n {
            let v = rho.entry(i, j);
            let flipped_all = signs_all[i] * signs_all[j] * v;
            let flipped_nf = signs_nf[i] * signs_nf[j] * v;
            channel[i * n + j] = (F::one() - p) * flipped_all + p * flipped_nf;
        }
    }

    let d = diffusion_matrix::<F>(n);
    let data = matmul(&d, &matmul(&channel, &d, n), n);
    Ok(FullDensity { n, data })
}

/// Collapses a pattern-conforming full matrix to role-wise entry averages.
/// Returns the six parameters and the largest within-role spread; errors if
/// the spread exceeds the pattern tolerance.
pub fn extract_symmetric<F: Real>(
    rho: &FullDensity<F>,
    space: &SearchSpace<F>,
) -> Result<(SymmetricDensity<F>, F)> {
    let n = space.n();
    if rho.n != n {
        return Err(Error::SizeGuard(format!(
            "matrix size {} does not match the search space n = {n}",
            rho.n
        )));
    }
    let k = space.k();

    let mut sums = [F::zero(); 6];
    let mut mins = [F::infinity(); 6];
    let mut maxs = [F::neg_infinity(); 6];
    let mut counts = [0usize; 6];
    for i in 0..n {
        for j in 0..n {
            let slot = match (role(i, k), role(j, k)) {
                (Role::NonFaulty, Role::NonFaulty) => 0,
                (Role::NonFaulty, Role::Faulty) | (Role::Faulty, Role::NonFaulty) => 1,
                (Role::Faulty, Role::Faulty) => 2,
                (Role::NonFaulty, Role::Unmarked) | (Role::Unmarked, Role::NonFaulty) => 3,
                (Role::Faulty, Role::Unmarked) | (Role::Unmarked, Role::Faulty) => 4,
                (Role::Unmarked, Role::Unmarked) => 5,
            };
            let v = rho.entry(i, j);
            sums[slot] = sums[slot] + v;
            mins[slot] = mins[slot].min(v);
            maxs[slot] = maxs[slot].max(v);
            counts[slot] += 1;
        }
    }

    let mut avg = [F::zero(); 6];
    let mut spread = F::zero();
    for slot in 0..6 {
        if counts[slot] == 0 {
            continue;
        }
        // identical entries round-trip exactly; only genuine spread averages
        avg[slot] = if mins[slot] == maxs[slot] {
            mins[slot]
        } else {
            sums[slot] / F::from_count(counts[slot])
        };
        spread = spread.max(maxs[slot] - mins[slot]);
    }
    if spread > F::of(tolerances::PATTERN_SPREAD_TOL) {
        return Err(Error::PatternViolation(format!(
            "within-role spread {spread} exceeds {}",
            tolerances::PATTERN_SPREAD_TOL
        )));
    }
    Ok((
        SymmetricDensity {
            a: avg[0],
            a_prime: avg[1],
            b: avg[2],
            c: avg[3],
            d_prime: avg[4],
            d: avg[5],
        },
        spread,
    ))
}

/// Sums `eps^|w| (1-eps)^(t-|w|) |psi_w><psi_w|` over all fault words `w` of
/// length `t`, evolving unreduced n-vectors against the dense diffusion
/// matrix. Zero-probability branches are pruned, so `eps` in {0, 1} costs a
/// single path.
pub fn enumerate_words_full<F: Real>(space: &SearchSpace<F>, steps: usize) -> Result<FullDensity<F>> {
    let n = space.n();
    if n > MAX_ENUMERATION_N {
        return Err(Error::SizeGuard(format!(
            "word enumeration is capped at n <= {MAX_ENUMERATION_N}, got {n}"
        )));
    }
    if steps > MAX_ORACLE_WORD_LEN {
        return Err(Error::SizeGuard(format!(
            "word enumeration is capped at t <= {MAX_ORACLE_WORD_LEN}, got {steps}"
        )));
    }
    let k = space.k();
    let eps = space.fault_prob();
    let d = diffusion_matrix::<F>(n);

    let start = vec![F::from_count(n).sqrt().recip(); n];
    let mut rho = vec![F::zero(); n * n];
    // DFS over the word tree; the state vector is evolved along the path.
    let mut stack: Vec<(Vec<F>, F, usize)> = vec![(start, F::one(), 0)];
    while let Some((psi, weight, depth)) = stack.pop() {
        if depth == steps {
            for i in 0..n {
                let wi = weight * psi[i];
                for j in 0..n {
                    rho[i * n + j] = rho[i * n + j] + wi * psi[j];
                }
            }
            continue;
        }
        for fault in [false, true] {
            let w = if fault { eps } else { F::one() - eps };
            if w == F::zero() {
                continue;
            }
            let mut next = psi.clone();
            for v in next.iter_mut().take(k) {
                *v = -*v;
            }
            if fault {
                next[k - 1] = -next[k - 1];
            }
            // diffusion as a dense matrix-vector product
            let mut out = vec![F::zero(); n];
            for (i, o) in out.iter_mut().enumerate() {
                let row = &d[i * n..(i + 1) * n];
                *o = row.iter().zip(next.iter()).map(|(a, b)| *a * *b).sum();
            }
            stack.push((out, weight * w, depth + 1));
        }
    }
    Ok(FullDensity { n, data: rho })
}
