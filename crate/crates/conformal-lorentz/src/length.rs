use curves::{Curve, CurveKind};
use space_core::{ConformalFactor, ExtReal, LorentzianPreLengthSpace, Point};

use crate::error::ConformalError;
use crate::segmax::segment_max;
use crate::tau_omega::closed_form_tau;

/// Samples per segment when scanning for the factor maximum.
const SEG_SAMPLES: usize = 33;
/// Samples when bracketing the factor range along the whole curve.
const RANGE_SAMPLES: usize = 129;

/// Infimum-side weighted length: `value` is the last refinement level,
/// `levels` pairs each partition point count with its sum (nonincreasing),
/// `converged` records whether two consecutive levels agreed to tolerance.
#[derive(Clone, Debug)]
pub struct ConformalLengthResult {
    pub value: ExtReal,
    pub levels: Vec<(usize, ExtReal)>,
    pub converged: bool,
}

/// Both sides of the composition identity and their disagreement.
#[derive(Clone, Debug)]
pub struct CompositionCheck {
    /// Weighted length of the curve under the rescaled time separation.
    pub lhs: ExtReal,
    /// Plain-time-separation length weighted by the pointwise product.
    pub rhs: ExtReal,
    /// `|lhs - rhs|`; infinite when exactly one side is infinite.
    pub gap: f64,
}

/// Weighted curve length: infimum over partitions of the weighted
/// variation, approached from above by dyadic refinement. After the
/// refinement the result is checked against the sandwich
/// `min(w) * Ltau <= value <= max(w) * Ltau` (finite values only) and a
/// violation is an error, since it can only come from a broken factor or
/// time separation.
pub fn conformal_length(
    space: &LorentzianPreLengthSpace,
    omega: &ConformalFactor,
    curve: &Curve,
    tol: f64,
    max_depth: u32,
) -> Result<ConformalLengthResult, ConformalError> {
    let plain = |p: &Point, q: &Point| space.causally_related(p, q).then(|| space.tau(p, q));
    let (value, levels, converged) =
        weighted_length_over(space, omega, curve, &plain, tol, max_depth)?;
    if let ExtReal::Finite(v) = value {
        let tau_res = curves::tau_length(space, curve, tol, max_depth, None)?;
        if let ExtReal::Finite(tau_len) = tau_res.value {
            let (m, big_m) = factor_range_on(omega, curve);
            let slack = 10.0 * tol + 1e-9;
            let lo = m * tau_len - slack;
            let hi = big_m * tau_len + slack;
            if v < lo || v > hi {
                return Err(ConformalError::SandwichViolated {
                    value: v,
                    lo,
                    hi,
                    m,
                    big_m,
                    tau_len,
                });
            }
        }
    }
    Ok(ConformalLengthResult {
        value,
        levels,
        converged,
    })
}

/// Compares rescaling in two stages against rescaling once by the product:
/// the weighted length of `curve` under the conformal time separation of
/// `omega` (left) versus the plain-time-separation length weighted by
/// `omega * omega_prime` (right). Requires a space and factor the closed
/// form covers.
pub fn conformal_length_composed(
    space: &LorentzianPreLengthSpace,
    omega: &ConformalFactor,
    omega_prime: &ConformalFactor,
    curve: &Curve,
    tol: f64,
) -> Result<CompositionCheck, ConformalError> {
    const DEPTH: u32 = 12;
    // Fail early when the closed form does not cover this space or factor,
    // so the refinement loop below can treat failures as bugs.
    closed_form_tau(space, omega, &curve.eval(curve.a), &curve.eval(curve.b))?;
    let rescaled = |p: &Point, q: &Point| {
        if !space.causally_related(p, q) {
            return None;
        }
        Some(closed_form_tau(space, omega, p, q).expect("closed form applies to related pair"))
    };
    let (lhs, _, _) = weighted_length_over(space, omega_prime, curve, &rescaled, tol, DEPTH)?;
    let product = ConformalFactor::product(omega, omega_prime);
    let rhs = conformal_length(space, &product, curve, tol, DEPTH)?.value;
    let gap = match (lhs, rhs) {
        (ExtReal::Finite(a), ExtReal::Finite(b)) => (a - b).abs(),
        (ExtReal::Infinite, ExtReal::Infinite) => 0.0,
        _ => f64::INFINITY,
    };
    Ok(CompositionCheck { lhs, rhs, gap })
}

/// Dyadic-refinement loop shared by the plain and composed lengths.
/// `tau_of` returns `None` for a pair that is not causally related, which
/// aborts with the offending parameter interval.
fn weighted_length_over(
    space: &LorentzianPreLengthSpace,
    weight: &ConformalFactor,
    curve: &Curve,
    tau_of: &dyn Fn(&Point, &Point) -> Option<ExtReal>,
    tol: f64,
    max_depth: u32,
) -> Result<(ExtReal, Vec<(usize, ExtReal)>, bool), ConformalError> {
    if curve.kind == CurveKind::Unrestricted {
        return Err(ConformalError::WrongCurveKind);
    }
    if space.id != curve.space_id {
        return Err(ConformalError::Curve(curves::CurveError::SpaceMismatch {
            curve: curve.space_id,
            space: space.id,
        }));
    }
    assert!(max_depth <= 26, "refinement depth {max_depth} is unreasonable");
    let profile = |t: f64| weight.eval(&curve.eval(t));
    let mut levels: Vec<(usize, ExtReal)> = Vec::new();
    let mut converged = false;
    let mut stable_run = 0;
    for depth in 0..=max_depth {
        let pieces = 1u64 << depth;
        let mut total = ExtReal::ZERO;
        let mut prev_t = curve.a;
        let mut prev = curve.eval(prev_t);
        for j in 1..=pieces {
            let t = if j == pieces {
                curve.b
            } else {
                curve.a + (curve.b - curve.a) * j as f64 / pieces as f64
            };
            let next = curve.eval(t);
            let tau = tau_of(&prev, &next).ok_or(ConformalError::NotCausal(prev_t, t))?;
            let seg_max = match weight.constant_value() {
                Some(c) => c,
                None => segment_max(&profile, prev_t, t, SEG_SAMPLES, weight.lipschitz).0,
            };
            total = total
                + tau
                    .scale(seg_max)
                    .expect("segment maximum of a positive factor is positive and finite");
            prev = next;
            prev_t = t;
        }
        levels.push((pieces as usize + 1, total));
        if depth > 0 {
            let stable = match (levels[depth as usize - 1].1, total) {
                (ExtReal::Finite(p), ExtReal::Finite(c)) => (p - c).abs() <= tol,
                (ExtReal::Infinite, ExtReal::Infinite) => true,
                _ => false,
            };
            // One stable gap can be a plateau (a peak of the weight
            // dominating both halves of a split); demand two in a row.
            if stable {
                stable_run += 1;
                if stable_run >= 2 {
                    converged = true;
                    break;
                }
            } else {
                stable_run = 0;
            }
        }
    }
    Ok((levels.last().unwrap().1, levels, converged))
}

/// Bracketed range of the factor along the curve: a scan plus a polish on
/// both extrema, so the returned interval contains the sampled range.
fn factor_range_on(omega: &ConformalFactor, curve: &Curve) -> (f64, f64) {
    if let Some(c) = omega.constant_value() {
        return (c, c);
    }
    let profile = |t: f64| omega.eval(&curve.eval(t));
    let neg = |t: f64| -profile(t);
    let (hi, _) = segment_max(&profile, curve.a, curve.b, RANGE_SAMPLES, None);
    let (neg_lo, _) = segment_max(&neg, curve.a, curve.b, RANGE_SAMPLES, None);
    (-neg_lo, hi)
}
