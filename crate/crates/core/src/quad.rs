//! One-dimensional quadrature.
//!
//! Two deliberately independent methods: adaptive Simpson with a hard
//! evaluation budget (the production path) and a fixed-order composite
//! Gauss-Legendre rule (the cross-check oracle). The step-count constants
//! derived from these integrals are verified by running both.

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Adaptive Simpson integration of `f` over `[a, b]` to absolute tolerance
/// `abs_tol`, spending at most `max_evals` integrand evaluations.
pub fn adaptive_simpson<F: Real>(
    f: &dyn Fn(F) -> F,
    a: F,
    b: F,
    abs_tol: F,
    max_evals: usize,
) -> Result<F> {
    if a == b {
        return Ok(F::zero());
    }
    if !(a < b) {
        return Err(Error::Domain(format!("bad interval [{a}, {b}]")));
    }

    let mut evals = 0usize;
    let eval = |x: F, evals: &mut usize| -> Result<F> {
        *evals += 1;
        let y = f(x);
        if !y.is_finite() {
            return Err(Error::Domain(format!("integrand not finite at x = {x}")));
        }
        Ok(y)
    };

    let two = F::of(2.0);
    let six = F::of(6.0);
    let m0 = (a + b) / two;
    let fa = eval(a, &mut evals)?;
    let fb = eval(b, &mut evals)?;
    let fm = eval(m0, &mut evals)?;

    struct Panel<F> {
        a: F,
        m: F,
        b: F,
        fa: F,
        fm: F,
        fb: F,
        whole: F,
        tol: F,
    }

    let simpson = |a: F, b: F, fa: F, fm: F, fb: F| (b - a) / six * (fa + F::of(4.0) * fm + fb);

    let whole = simpson(a, b, fa, fm, fb);
    let mut stack = vec![Panel {
        a,
        m: m0,
        b,
        fa,
        fm,
        fb,
        whole,
        tol: abs_tol,
    }];
    let mut total = F::zero();

    while let Some(p) = stack.pop() {
        if evals >= max_evals {
            return Err(Error::QuadratureNonConvergence(format!(
                "evaluation budget {max_evals} exhausted before reaching tolerance {abs_tol}"
            )));
        }
        let lm = (p.a + p.m) / two;
        let rm = (p.m + p.b) / two;
        let flm = eval(lm, &mut evals)?;
        let frm = eval(rm, &mut evals)?;
        let left = simpson(p.a, p.m, p.fa, flm, p.fm);
        let right = simpson(p.m, p.b, p.fm, frm, p.fb);
        let delta = left + right - p.whole;
        if delta.abs() <= F::of(15.0) * p.tol {
            total = total + left + right + delta / F::of(15.0);
        } else {
            let half_tol = p.tol / two;
            stack.push(Panel {
                a: p.a,
                m: lm,
                b: p.m,
                fa: p.fa,
                fm: flm,
                fb: p.fm,
                whole: left,
                tol: half_tol,
            });
            stack.push(Panel {
                a: p.m,
                m: rm,
                b: p.b,
                fa: p.fm,
                fm: frm,
                fb: p.fb,
                whole: right,
                tol: half_tol,
            });
        }
    }
    Ok(total)
}

/// Composite 5-point Gauss-Legendre over `panels` equal subintervals.
pub fn composite_gauss5<F: Real>(f: &dyn Fn(F) -> F, a: F, b: F, panels: usize) -> F {
    debug_assert!(panels > 0);
    let nodes: [f64; 5] = [
        -0.906_179_845_938_664,
        -0.538_469_310_105_683,
        0.0,
        0.538_469_310_105_683,
        0.906_179_845_938_664,
    ];
    let weights: [f64; 5] = [
        0.236_926_885_056_189,
        0.478_628_670_499_366,
        0.568_888_888_888_889,
        0.478_628_670_499_366,
        0.236_926_885_056_189,
    ];
    let h = (b - a) / F::from_count(panels);
    let half = h / F::of(2.0);
    let mut total = F::zero();
    for i in 0..panels {
        let mid = a + h * F::from_count(i) + half;
        let mut acc = F::zero();
        for (x, w) in nodes.iter().zip(weights.iter()) {
            acc = acc + F::of(*w) * f(mid + half * F::of(*x));
        }
        total = total + acc * half;
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn polynomial_exact() {
        let f = |x: f64| 3.0 * x * x;
        let v = adaptive_simpson(&f, 0.0, 2.0, 1e-12, 1 << 20).unwrap();
        assert_abs_diff_eq!(v, 8.0, epsilon = 1e-12);
        assert_abs_diff_eq!(composite_gauss5(&f, 0.0, 2.0, 4), 8.0, epsilon = 1e-13);
    }

    #[test]
    fn oscillatory_integrand() {
        let f = |x: f64| (10.0 * x).sin();
        let exact = (1.0 - (10.0f64).cos()) / 10.0;
        let v = adaptive_simpson(&f, 0.0, 1.0, 1e-12, 1 << 22).unwrap();
        assert_abs_diff_eq!(v, exact, epsilon = 1e-11);
        assert_abs_diff_eq!(composite_gauss5(&f, 0.0, 1.0, 64), exact, epsilon = 1e-13);
    }

    #[test]
    fn near_singular_integrand_converges() {
        // 1/sqrt(x + 1e-6): steep but integrable
        let f = |x: f64| 1.0 / (x + 1e-6).sqrt();
        let exact = 2.0 * ((1.0f64 + 1e-6).sqrt() - 1e-3);
        let v = adaptive_simpson(&f, 0.0, 1.0, 1e-10, 1 << 22).unwrap();
        assert_abs_diff_eq!(v, exact, epsilon = 1e-8);
    }

    #[test]
    fn empty_interval_is_zero() {
        let f = |x: f64| x;
        assert_eq!(adaptive_simpson(&f, 1.0, 1.0, 1e-12, 100).unwrap(), 0.0);
    }

    #[test]
    fn budget_exhaustion_is_an_error() {
        let f = |x: f64| 1.0 / (x + 1e-12).sqrt();
        let r = adaptive_simpson(&f, 0.0, 1.0, 1e-14, 64);
        assert!(matches!(r, Err(Error::QuadratureNonConvergence(_))));
    }

    #[test]
    fn non_finite_integrand_is_an_error() {
        let f = |x: f64| 1.0 / x;
        let r = adaptive_simpson(&f, 0.0, 1.0, 1e-10, 1 << 20);
        assert!(matches!(r, Err(Error::Domain(_))));
    }
}
