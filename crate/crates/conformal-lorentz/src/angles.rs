use curves::{Curve, CurveKind};
use space_core::{ConformalFactor, LorentzianPreLengthSpace, Point};

use crate::error::ConformalError;
use crate::tau_omega::closed_form_tau;

/// The hyperbolic law of cosines is applied with time orientation sign
/// `-1` and the cosh inverted on the absolute value of its right side;
/// results are magnitudes and carry this flag instead of a resolved sign.
pub const SIGN_CONVENTION: &str = "sigma=-1; angle = arcosh(|a^2+b^2-c^2| / (2ab))";

/// Distinct start points within this distance still count as a common
/// vertex.
const VERTEX_TOL: f64 = 1e-9;
/// Bisection steps when locating the null-related parameter.
const NULL_BISECT_ITERS: u32 = 100;
/// Coarse subdivisions used to bracket the null-related parameter.
const NULL_SCAN_STEPS: usize = 256;

/// One evaluated term of the angle schedule.
#[derive(Clone, Debug)]
pub struct AngleTerm {
    /// Parameter along the first ray.
    pub s: f64,
    /// Parameter along the second ray where the pair turns null related.
    pub t: f64,
    /// Comparison angle of the degenerate triangle at this scale.
    pub raw: f64,
}

#[derive(Clone, Debug)]
pub struct AngleLimitResult {
    /// Extrapolated (halving schedules) or last raw angle.
    pub angle: f64,
    pub terms: Vec<AngleTerm>,
    pub sign_convention: &'static str,
}

/// Angle of the comparison triangle with side lengths `a`, `b` opposite
/// legs and `c` across, via the hyperbolic law of cosines. `sign` is the
/// declared time orientation, `-1` or `+1`; see `SIGN_CONVENTION` for how
/// it is treated. Preconditions: `a, b > 0` finite, `c >= 0`.
pub fn comparison_angle(a: f64, b: f64, c: f64, sign: i8) -> f64 {
    assert!(sign == -1 || sign == 1, "sign must be -1 or +1, got {sign}");
    assert!(a > 0.0 && a.is_finite(), "side a must be positive finite, got {a}");
    assert!(b > 0.0 && b.is_finite(), "side b must be positive finite, got {b}");
    assert!(c >= 0.0 && c.is_finite(), "side c must be nonnegative finite, got {c}");
    let rhs = (a * a + b * b - c * c) / (2.0 * a * b);
    rhs.abs().max(1.0).acosh()
}

/// Angle between two timelike rays from a common start, measured through
/// null-related pairs: for each schedule parameter `s` along `alpha`, the
/// parameter `t` along `beta` where the pair `(alpha(s), beta(t))` stops
/// being unrelated is found by bisection, the degenerate comparison
/// triangle is scored, and the sequence is extrapolated (one Richardson
/// step on halving schedules). With a factor, side lengths use the
/// conformal time separation; without, the plain one.
pub fn angle_limit(
    space: &LorentzianPreLengthSpace,
    omega: Option<&ConformalFactor>,
    alpha: &Curve,
    beta: &Curve,
    schedule: &[f64],
) -> Result<AngleLimitResult, ConformalError> {
    if alpha.kind != CurveKind::Timelike || beta.kind != CurveKind::Timelike {
        return Err(ConformalError::AngleFailed(
            "both rays must be timelike curves".to_string(),
        ));
    }
    if schedule.is_empty() {
        return Err(ConformalError::AngleFailed("empty schedule".to_string()));
    }
    let p = alpha.eval(alpha.a);
    let p_beta = beta.eval(beta.a);
    if space.dist(&p, &p_beta) > VERTEX_TOL {
        return Err(ConformalError::AngleFailed(format!(
            "rays start {:?} and {:?} apart, need a common vertex",
            p.coords, p_beta.coords
        )));
    }
    let side = |lo: &Point, hi: &Point| -> Result<f64, ConformalError> {
        let value = match omega {
            Some(w) => closed_form_tau(space, w, lo, hi)?,
            None => space.tau(lo, hi),
        };
        match value.as_finite() {
            Some(v) if v > 0.0 => Ok(v),
            Some(_) => Err(ConformalError::AngleFailed(
                "degenerate side: zero separation from the vertex".to_string(),
            )),
            None => Err(ConformalError::AngleFailed(
                "infinite separation from the vertex".to_string(),
            )),
        }
    };
    let mut terms = Vec::with_capacity(schedule.len());
    for &s in schedule {
        if !(s > alpha.a && s <= alpha.b) {
            return Err(ConformalError::AngleFailed(format!(
                "schedule parameter {s} outside ({}, {}]",
                alpha.a, alpha.b
            )));
        }
        let a_pt = alpha.eval(s);
        let t = null_boundary(space, &a_pt, beta)?;
        let b_pt = beta.eval(t);
        let a_len = side(&p, &a_pt)?;
        let b_len = side(&p, &b_pt)?;
        terms.push(AngleTerm {
            s,
            t,
            raw: comparison_angle(a_len, b_len, 0.0, -1),
        });
    }
    let angle = extrapolate(schedule, &terms);
    Ok(AngleLimitResult {
        angle,
        terms,
        sign_convention: SIGN_CONVENTION,
    })
}

/// Smallest parameter of `beta` whose point is chronologically after
/// `probe`, to bisection resolution. The pair at the returned parameter
/// sits on the null boundary.
fn null_boundary(
    space: &LorentzianPreLengthSpace,
    probe: &Point,
    beta: &Curve,
) -> Result<f64, ConformalError> {
    let related = |t: f64| space.chronologically_related(probe, &beta.eval(t));
    if related(beta.a) {
        return Err(ConformalError::AngleFailed(
            "ray starts inside the probe's chronological future".to_string(),
        ));
    }
    let mut hi = None;
    for i in 1..=NULL_SCAN_STEPS {
        let t = beta.a + (beta.b - beta.a) * i as f64 / NULL_SCAN_STEPS as f64;
        if related(t) {
            hi = Some(t);
            break;
        }
    }
    let Some(mut hi) = hi else {
        return Err(ConformalError::AngleFailed(
            "no null-related pair within the ray's extent".to_string(),
        ));
    };
    let mut lo = hi - (beta.b - beta.a) / NULL_SCAN_STEPS as f64;
    for _ in 0..NULL_BISECT_ITERS {
        let mid = 0.5 * (lo + hi);
        if related(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// One Richardson step on the tail when the schedule halves; otherwise the
/// last raw term. First-order error in `s` cancels under `2r_{k+1} - r_k`.
fn extrapolate(schedule: &[f64], terms: &[AngleTerm]) -> f64 {
    let n = terms.len();
    if n >= 2 {
        let (s0, s1) = (schedule[n - 2], schedule[n - 1]);
        if (s0 - 2.0 * s1).abs() <= 0.01 * s0.abs() {
            return 2.0 * terms[n - 1].raw - terms[n - 2].raw;
        }
    }
    terms[n - 1].raw
}
