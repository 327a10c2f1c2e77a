//! Spherical trigonometry on the unit sphere of reduced states.
//!
//! The fault-free trajectory is a great circle ("slanted orthodrome")
//! inclined at `A = atan(1/sqrt(k-1))` to the equator `z = 0`; faults
//! reflect states across the equator. Napier's rules for right spherical
//! triangles give the fault-displacement formula, speed lower bounds along
//! meridians, and the integral step bounds behind the search-time constants.

use crate::error::{Error, Result};
use crate::quad::{adaptive_simpson, composite_gauss5};
use crate::reduced::SpherePoint;
use crate::scalar::Real;
use crate::space::SearchSpace;
use crate::tolerances;

/// Position of a sphere point in the coordinates used by the bound proofs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeodesicCoords<F> {
    /// Latitude `a = asin(z)`, signed distance from the equator.
    pub latitude: F,
    /// Longitude `b = atan2(y, x)` about the z-axis, measured from (1,0,0).
    pub longitude: F,
    /// Great-circle distance `c = acos(x)` from (1,0,0).
    pub distance: F,
    /// Inclination `A = atan(1/sqrt(k-1))` of the fault-free circle.
    pub inclination: F,
}

impl<F: Real> GeodesicCoords<F> {
    /// Residual of rule R1 (`cos c = cos a cos b`) at this point.
    pub fn r1_residual(&self) -> F {
        (self.distance.cos() - self.latitude.cos() * self.longitude.cos()).abs()
    }
}

/// Reads off the geodesic coordinates of a unit sphere point. Rejects
/// `k = 1`, where the inclination degenerates.
pub fn state_to_geodesic<F: Real>(
    point: &SpherePoint<F>,
    space: &SearchSpace<F>,
) -> Result<GeodesicCoords<F>> {
    let inclination = space.inclination()?;
    Ok(GeodesicCoords {
        latitude: point.z.min(F::one()).max(-F::one()).asin(),
        longitude: point.y.atan2(point.x),
        distance: point.x.min(F::one()).max(-F::one()).acos(),
        inclination,
    })
}

/// The ten Napier rules for a right spherical triangle (right angle at C).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NapierRule {
    R1,
    R2,
    R3,
    R4,
    R5,
    R6,
    R7,
    R8,
    R9,
    R10,
}

impl NapierRule {
    pub const ALL: [NapierRule; 10] = [
        NapierRule::R1,
        NapierRule::R2,
        NapierRule::R3,
        NapierRule::R4,
        NapierRule::R5,
        NapierRule::R6,
        NapierRule::R7,
        NapierRule::R8,
        NapierRule::R9,
        NapierRule::R10,
    ];
}

impl std::fmt::Display for NapierRule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "R{}", *self as usize + 1)
    }
}

/// Parts of a right spherical triangle: legs `a`, `b`, hypotenuse `c`, and
/// the angles `A`, `B` opposite the respective legs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RightTriangle<F> {
    pub side_a: F,
    pub side_b: F,
    pub hypotenuse: F,
    pub angle_a: F,
    pub angle_b: F,
}

impl<F: Real> RightTriangle<F> {
    /// Solves the triangle from angle `A` and its adjacent leg `b`
    /// (both in `(0, pi/2)`), via rules R4, R1 and R9.
    pub fn from_angle_and_side(angle_a: F, side_b: F) -> Result<Self> {
        let half_pi = F::FRAC_PI_2();
        if angle_a <= F::zero() || angle_a >= half_pi || side_b <= F::zero() || side_b >= half_pi {
            return Err(Error::Domain(format!(
                "triangle generation needs A, b in (0, pi/2), got A={angle_a}, b={side_b}"
            )));
        }
        let side_a = (angle_a.tan() * side_b.sin()).atan();
        let hypotenuse = (side_a.cos() * side_b.cos()).acos();
        let angle_b = (angle_a.sin() * side_b.cos()).acos();
        Ok(Self {
            side_a,
            side_b,
            hypotenuse,
            angle_a,
            angle_b,
        })
    }
}

fn tan_checked<F: Real>(x: F) -> Result<F> {
    if x.cos() == F::zero() {
        return Err(Error::Domain(format!("tan undefined at {x}")));
    }
    Ok(x.tan())
}

fn cot_checked<F: Real>(x: F) -> Result<F> {
    if x.sin() == F::zero() {
        return Err(Error::Domain(format!("cot undefined at {x}")));
    }
    Ok(x.cos() / x.sin())
}

/// Evaluates the right-hand side of the given Napier rule.
pub fn napier<F: Real>(rule: NapierRule, tri: &RightTriangle<F>) -> Result<F> {
    use NapierRule::*;
    Ok(match rule {
        R1 => tri.side_a.cos() * tri.side_b.cos(),
        R2 => tri.angle_a.sin() * tri.hypotenuse.sin(),
        R3 => tri.angle_b.sin() * tri.hypotenuse.sin(),
        R4 => tan_checked(tri.angle_a)? * tri.side_b.sin(),
        R5 => tan_checked(tri.angle_b)? * tri.side_a.sin(),
        R6 => tri.angle_a.cos() * tan_checked(tri.hypotenuse)?,
        R7 => tri.angle_b.cos() * tan_checked(tri.hypotenuse)?,
        R8 => tri.angle_b.sin() * tri.side_a.cos(),
        R9 => tri.angle_a.sin() * tri.side_b.cos(),
        R10 => cot_checked(tri.angle_a)? * cot_checked(tri.angle_b)?,
    })
}

/// Evaluates the left-hand side of the given Napier rule.
pub fn napier_lhs<F: Real>(rule: NapierRule, tri: &RightTriangle<F>) -> Result<F> {
    use NapierRule::*;
    Ok(match rule {
        R1 | R10 => tri.hypotenuse.cos(),
        R2 => tri.side_a.sin(),
        R3 => tri.side_b.sin(),
        R4 | R7 => tan_checked(tri.side_a)?,
        R5 | R6 => tan_checked(tri.side_b)?,
        R8 => tri.angle_a.cos(),
        R9 => tri.angle_b.cos(),
    })
}

/// `lhs - rhs` of the given rule.
pub fn napier_residual<F: Real>(rule: NapierRule, tri: &RightTriangle<F>) -> Result<F> {
    Ok(napier_lhs(rule, tri)? - napier(rule, tri)?)
}

/// Angular set-back along the equator that a single fault inflicts on a
/// state at latitude `a`, on a trajectory inclined at `A`:
/// `c_err = atan(tan 2a * sqrt(1 - cos^2 A / cos^2 a))`.
///
/// Requires `0 <= a <= A <= pi/4`; at `a = A` the radicand vanishes and the
/// set-back is zero.
pub fn fault_displacement<F: Real>(a: F, big_a: F) -> Result<F> {
    let quarter_pi = F::FRAC_PI_4();
    if big_a > quarter_pi {
        return Err(Error::Domain(format!(
            "inclination must satisfy A <= pi/4, got {big_a}"
        )));
    }
    if a < F::zero() || a > big_a {
        return Err(Error::Domain(format!(
            "latitude must satisfy 0 <= a <= A, got a={a}, A={big_a}"
        )));
    }
    let ratio = big_a.cos() / a.cos();
    let radicand = F::one() - ratio * ratio;
    if radicand <= F::zero() {
        return Ok(F::zero());
    }
    Ok(((F::of(2.0) * a).tan() * radicand.sqrt()).atan())
}

/// Outcome of the Corollary-1 sweep: at every latitude, either the fault
/// set-back is at most pi/4, or the state is already within pi/4 of the
/// target meridian.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CorollaryOneReport<F> {
    pub passed: bool,
    /// Largest set-back seen on the low-latitude range.
    pub worst_displacement: F,
    pub worst_displacement_at: F,
    /// Largest remaining meridian distance seen on the high-latitude range.
    pub worst_remaining: F,
    pub points_checked: usize,
}

/// Grid check of Corollary 1 for an inclination `A` in `(0, pi/4]`.
///
/// For `a` in `[0, min(A, pi/6)]` the set-back must stay within `pi/4`; for
/// `a` in `(pi/6, A]` the distance already travelled (`c = asin(sin a / sin A)`,
/// rule R2) leaves at most `pi/4` to the target meridian.
pub fn check_corollary_one<F: Real>(big_a: F, grid_step: F) -> Result<CorollaryOneReport<F>> {
    let quarter_pi = F::FRAC_PI_4();
    let sixth_pi = F::PI() / F::of(6.0);
    if big_a <= F::zero() || big_a > quarter_pi {
        return Err(Error::Domain(format!(
            "corollary check needs 0 < A <= pi/4, got {big_a}"
        )));
    }
    if grid_step <= F::zero() {
        return Err(Error::Domain("grid step must be positive".into()));
    }
    let slack = F::of(tolerances::NORM_TOL);
    let mut passed = true;
    let mut worst_displacement = F::zero();
    let mut worst_displacement_at = F::zero();
    let mut worst_remaining = F::zero();
    let mut points = 0usize;

    let low_end = big_a.min(sixth_pi);
    let mut a = F::zero();
    loop {
        let x = a.min(low_end);
        let c_err = fault_displacement(x, big_a)?;
        points += 1;
        if c_err > worst_displacement {
            worst_displacement = c_err;
            worst_displacement_at = x;
        }
        if c_err > quarter_pi + slack {
            passed = false;
        }
        if x >= low_end {
            break;
        }
        a = a + grid_step;
    }

    if big_a > sixth_pi {
        let mut a = sixth_pi + grid_step;
        loop {
            let x = a.min(big_a);
            let ratio = (x.sin() / big_a.sin()).min(F::one());
            let travelled = ratio.asin();
            let remaining = F::FRAC_PI_2() - travelled;
            points += 1;
            if remaining > worst_remaining {
                worst_remaining = remaining;
            }
            if remaining > quarter_pi + slack {
                passed = false;
            }
            if x >= big_a {
                break;
            }
            a = a + grid_step;
        }
    }

    Ok(CorollaryOneReport {
        passed,
        worst_displacement,
        worst_displacement_at,
        worst_remaining,
        points_checked: points,
    })
}

/// Lower bound on the speed of any mixture component on meridian `b`, as a
/// fraction of the fault-free speed:
/// `sqrt(1 - sin^2 2A sin^2 b / (cos^2 A cos^2 b + sin^2 b))`.
///
/// This is the algebraically equivalent, overflow-free form of
/// `sqrt(1 - sin^2 2A tan^2 b / (cos^2 A + tan^2 b))`; at `b = pi/2` it
/// evaluates to the analytic limit `|cos 2A|` directly.
pub fn speed_lower<F: Real>(b: F, big_a: F) -> F {
    debug_assert!(b >= F::zero() && big_a >= F::zero() && big_a <= F::FRAC_PI_4());
    let sb = b.sin();
    let cb = b.cos();
    let ca = big_a.cos();
    let s2a = (F::of(2.0) * big_a).sin();
    let denom = ca * ca * cb * cb + sb * sb;
    if denom == F::zero() {
        return F::one(); // b = 0 with A = pi/2 cannot happen under the guard
    }
    (F::one() - s2a * s2a * sb * sb / denom).max(F::zero()).sqrt()
}

/// Speed of the projection onto the equator: `speed_lower(b, A) * cos A`.
pub fn projected_speed_lower<F: Real>(b: F, big_a: F) -> F {
    speed_lower(b, big_a) * big_a.cos()
}

fn check_endpoint<F: Real>(b_star: F, big_a: F) -> Result<()> {
    if b_star < F::zero() || b_star > F::PI() {
        return Err(Error::Domain(format!(
            "meridian must lie in [0, pi], got {b_star}"
        )));
    }
    if big_a < F::zero() || big_a > F::FRAC_PI_4() {
        return Err(Error::Domain(format!(
            "inclination must lie in [0, pi/4], got {big_a}"
        )));
    }
    if big_a == F::FRAC_PI_4() && b_star >= F::FRAC_PI_2() {
        return Err(Error::SingularEndpoint(
            "at A = pi/4 the projected speed vanishes on the meridian b = pi/2".into(),
        ));
    }
    Ok(())
}

fn gap_integral<F: Real>(b_star: F, big_a: F) -> Result<F> {
    let ca = big_a.cos();
    let f = move |b: F| (speed_lower(b, big_a) * ca).recip();
    adaptive_simpson(
        &f,
        F::zero(),
        b_star,
        F::of(tolerances::QUAD_TOL),
        tolerances::QUAD_MAX_EVALS,
    )
}

/// Upper bound on the number of steps needed to reach meridian `b_star`,
/// for any fault probability: the projected-speed integral divided by the
/// fault-free per-step angle. Never less than `b_star / v_G`.
pub fn steps_upper_bound<F: Real>(b_star: F, big_a: F, space: &SearchSpace<F>) -> Result<F> {
    check_endpoint(b_star, big_a)?;
    let v_g = space.grover_angle();
    let bound = gap_integral(b_star, big_a)? / v_g;
    Ok(bound.max(b_star / v_g))
}

/// Upper bound on the meridian distance between the fastest and slowest
/// mixture components once the slowest reaches `b_star` (the fault-free
/// angle cancels out of the integral).
pub fn meridian_gap<F: Real>(b_star: F, big_a: F) -> Result<F> {
    check_endpoint(b_star, big_a)?;
    if big_a == F::zero() {
        return Ok(F::zero());
    }
    Ok((gap_integral(b_star, big_a)? - b_star).max(F::zero()))
}

/// Same integral on the fixed composite Gauss rule; the independent
/// cross-check for the adaptive path.
pub fn meridian_gap_composite<F: Real>(b_star: F, big_a: F, panels: usize) -> Result<F> {
    check_endpoint(b_star, big_a)?;
    if big_a == F::zero() {
        return Ok(F::zero());
    }
    let ca = big_a.cos();
    let f = move |b: F| (speed_lower(b, big_a) * ca).recip();
    Ok(composite_gauss5(&f, F::zero(), b_star, panels) - b_star)
}

/// The constants behind the O(sqrt(N)) search theorem, all recomputed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Theorem1Report<F> {
    /// Supremum of `meridian_gap(3pi/8, A)` over the grid on `[0, 0.1953 pi]`.
    pub gap_sup: F,
    /// Grid point attaining the supremum.
    pub gap_sup_at: F,
    /// Whether the supremum stays within `pi/4`.
    pub gap_sup_ok: bool,
    /// `meridian_gap(0.33 pi, pi/4)`, the single-non-faulty-item case.
    pub gap_k2: F,
    /// Whether `gap_k2` stays within `0.34 pi`. The true value is
    /// 0.341614 pi, so this flag is honestly `false`: 0.34 pi is a
    /// two-decimal rounding of the constant, not an upper bound for it.
    pub gap_k2_ok: bool,
    /// Largest inclination for which `meridian_gap(3pi/8, A) <= pi/4`,
    /// recovered by bisection (about 0.19531 pi).
    pub threshold_inclination: F,
    /// Success floor `cos^2(pi/8)` for at least two non-faulty marked items.
    pub floor_many: F,
    /// Success floor `cos^2(0.17 pi)` for exactly one non-faulty marked item.
    pub floor_single: F,
}

/// Grid step used for the supremum scan in [`theorem1_constants`].
pub const THEOREM1_GRID_STEP_PI: f64 = 1e-3;
/// Upper end of the inclination range scanned in [`theorem1_constants`].
pub const THEOREM1_INCLINATION_PI: f64 = 0.1953;

/// Recomputes the constants used in the search-time proof.
pub fn theorem1_constants<F: Real>() -> Result<Theorem1Report<F>> {
    let pi = F::PI();
    let quarter_pi = F::FRAC_PI_4();
    let b_star = F::of(3.0) * pi / F::of(8.0);
    let a_end = F::of(THEOREM1_INCLINATION_PI) * pi;
    let step = F::of(THEOREM1_GRID_STEP_PI) * pi;

    let mut gap_sup = F::zero();
    let mut gap_sup_at = F::zero();
    let mut a = F::zero();
    loop {
        let x = a.min(a_end);
        let g = meridian_gap(b_star, x)?;
        if g > gap_sup {
            gap_sup = g;
            gap_sup_at = x;
        }
        if x >= a_end {
            break;
        }
        a = a + step;
    }

    let gap_k2 = meridian_gap(F::of(0.33) * pi, quarter_pi)?;

    // bisection for the largest A with gap(3pi/8, A) <= pi/4
    let mut lo = F::of(0.15) * pi;
    let mut hi = F::of(0.22) * pi;
    debug_assert!(meridian_gap(b_star, lo)? < quarter_pi);
    debug_assert!(meridian_gap(b_star, hi)? > quarter_pi);
    for _ in 0..200 {
        let mid = (lo + hi) / F::of(2.0);
        if meridian_gap(b_star, mid)? <= quarter_pi {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= F::of(1e-13) {
            break;
        }
    }

    Ok(Theorem1Report {
        gap_sup,
        gap_sup_at,
        gap_sup_ok: gap_sup <= quarter_pi,
        gap_k2,
        gap_k2_ok: gap_k2 <= F::of(0.34) * pi,
        threshold_inclination: (lo + hi) / F::of(2.0),
        floor_many: F::FRAC_PI_8().cos().powi(2),
        floor_single: (F::of(0.17) * pi).cos().powi(2),
    })
}
