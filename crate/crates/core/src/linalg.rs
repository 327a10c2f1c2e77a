//! Small symmetric eigensolvers.
//!
//! Jacobi sweeps are the production route (machine-precision accurate even
//! at degenerate eigenvalues, which the density invariants rely on); the
//! closed-form trigonometric 3x3 solution is kept as an independent
//! cross-check for the solver itself.

use crate::scalar::Real;

/// Eigenvalues of a symmetric 3x3 matrix, ascending.
pub fn sym3_eigenvalues<F: Real>(m: &[[F; 3]; 3]) -> [F; 3] {
    let flat = [
        m[0][0], m[0][1], m[0][2], m[1][0], m[1][1], m[1][2], m[2][0], m[2][1], m[2][2],
    ];
    let e = jacobi_eigenvalues(&flat, 3);
    [e[0], e[1], e[2]]
}

/// Closed-form eigenvalues of a symmetric 3x3 matrix, ascending, via the
/// trigonometric solution of the characteristic cubic.
///
/// Near-degenerate spectra cost this route a few digits (absolute error up
/// to about 1e-8 on unit-scale input), so it serves as a cross-check, not
/// as the production path.
pub fn sym3_eigenvalues_analytic<F: Real>(m: &[[F; 3]; 3]) -> [F; 3] {
    let two = F::of(2.0);
    let p1 = m[0][1] * m[0][1] + m[0][2] * m[0][2] + m[1][2] * m[1][2];
    let q = (m[0][0] + m[1][1] + m[2][2]) / F::of(3.0);
    let p2 = (m[0][0] - q).powi(2) + (m[1][1] - q).powi(2) + (m[2][2] - q).powi(2) + two * p1;
    let p = (p2 / F::of(6.0)).sqrt();
    if p == F::zero() {
        return [q, q, q];
    }
    // B = (M - q I) / p, r = det(B) / 2, clamped against rounding.
    let b = |i: usize, j: usize| {
        let d = if i == j { m[i][j] - q } else { m[i][j] };
        d / p
    };
    let det = b(0, 0) * (b(1, 1) * b(2, 2) - b(1, 2) * b(2, 1))
        - b(0, 1) * (b(1, 0) * b(2, 2) - b(1, 2) * b(2, 0))
        + b(0, 2) * (b(1, 0) * b(2, 1) - b(1, 1) * b(2, 0));
    let r = (det / two).min(F::one()).max(-F::one());
    let phi = r.acos() / F::of(3.0);
    let big = q + two * p * phi.cos();
    let small = q + two * p * (phi + F::of(2.0) * F::PI() / F::of(3.0)).cos();
    let mid = F::of(3.0) * q - big - small;
    [small, mid, big]
}

/// Eigenvalues of a dense symmetric n x n matrix (row-major), ascending,
/// via cyclic Jacobi rotations.
pub fn jacobi_eigenvalues<F: Real>(matrix: &[F], n: usize) -> Vec<F> {
    assert_eq!(matrix.len(), n * n, "matrix must be n x n");
    let mut a = matrix.to_vec();
    let idx = |i: usize, j: usize| i * n + j;

    let scale: F = (0..n)
        .map(|i| (0..n).map(|j| a[idx(i, j)] * a[idx(i, j)]).sum::<F>())
        .sum::<F>()
        .sqrt()
        .max(F::one());
    let stop = F::of(1e-30) * scale * scale;

    for _sweep in 0..100 {
        let off: F = (0..n)
            .map(|i| {
                (0..n)
                    .filter(|&j| j != i)
                    .map(|j| a[idx(i, j)] * a[idx(i, j)])
                    .sum::<F>()
            })
            .sum();
        if off <= stop {
            break;
        }
        for p in 0..n - 1 {
            for q in p + 1..n {
                let apq = a[idx(p, q)];
                if apq == F::zero() {
                    continue;
                }
                let theta = (a[idx(q, q)] - a[idx(p, p)]) / (F::of(2.0) * apq);
                let t = {
                    let d = theta.abs() + (theta * theta + F::one()).sqrt();
                    if theta >= F::zero() {
                        d.recip()
                    } else {
                        -d.recip()
                    }
                };
                let c = (t * t + F::one()).sqrt().recip();
                let s = t * c;
                for r in 0..n {
                    let arp = a[idx(r, p)];
                    let arq = a[idx(r, q)];
                    a[idx(r, p)] = c * arp - s * arq;
                    a[idx(r, q)] = s * arp + c * arq;
                }
                for r in 0..n {
                    let apr = a[idx(p, r)];
                    let aqr = a[idx(q, r)];
                    a[idx(p, r)] = c * apr - s * aqr;
                    a[idx(q, r)] = s * apr + c * aqr;
                }
            }
        }
    }

    let mut eig: Vec<F> = (0..n).map(|i| a[idx(i, i)]).collect();
    eig.sort_by(|x, y| x.partial_cmp(y).expect("finite eigenvalues"));
    eig
}
