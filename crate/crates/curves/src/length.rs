use space_core::{ExtReal, LorentzianPreLengthSpace};

use crate::curve::Curve;
use crate::error::CurveError;
use crate::partition::Partition;
use crate::variation::check_space;

/// Result of the infimum-side length: value, per-level sums (nonincreasing),
/// and whether the dyadic refinement met the tolerance.
#[derive(Clone, Debug)]
pub struct TauLengthResult {
    pub value: ExtReal,
    pub levels: Vec<ExtReal>,
    pub converged: bool,
}

/// Result of the supremum-side length: per-level sums are nondecreasing;
/// `diverged` is set when a level exceeded the ceiling, in which case
/// `value` is a lower bound only.
#[derive(Clone, Debug)]
pub struct DLengthResult {
    pub value: f64,
    pub levels: Vec<f64>,
    pub converged: bool,
    pub diverged: bool,
}

/// Time-separation length: infimum over partitions of `tau_variation`,
/// approached from above by dyadic refinement of `base` (default: the
/// trivial partition). Forced split points in `base` survive every level,
/// so additivity across a split is exact per level.
///
/// Errors if some refinement level finds a consecutive pair that is not
/// causally related (the curve was not causal after all).
pub fn tau_length(
    space: &LorentzianPreLengthSpace,
    curve: &Curve,
    tol: f64,
    max_depth: u32,
    base: Option<&Partition>,
) -> Result<TauLengthResult, CurveError> {
    check_space(space, curve)?;
    assert!(max_depth <= 26, "refinement depth {max_depth} is unreasonable");
    let trivial = Partition::trivial(curve);
    let base = match base {
        Some(p) => {
            p.validate_for(curve)?;
            p.clone()
        }
        None => trivial,
    };
    let mut levels: Vec<ExtReal> = Vec::new();
    let mut converged = false;
    for depth in 0..=max_depth {
        let pieces = 1u64 << depth;
        let mut total = ExtReal::ZERO;
        for w in base.points().windows(2) {
            let (lo, hi) = (w[0], w[1]);
            let mut prev_t = lo;
            let mut prev = curve.eval(lo);
            for j in 1..=pieces {
                let t = if j == pieces {
                    hi
                } else {
                    lo + (hi - lo) * j as f64 / pieces as f64
                };
                let next = curve.eval(t);
                if !space.causally_related(&prev, &next) {
                    return Err(CurveError::NotCausalBetween(prev_t, t));
                }
                total = total + space.tau(&prev, &next);
                prev = next;
                prev_t = t;
            }
        }
        levels.push(total);
        if depth > 0 {
            let stable = match (levels[depth as usize - 1], total) {
                (ExtReal::Finite(p), ExtReal::Finite(c)) => (p - c).abs() <= tol,
                (ExtReal::Infinite, ExtReal::Infinite) => true,
                _ => false,
            };
            if stable {
                converged = true;
                break;
            }
        }
    }
    Ok(TauLengthResult {
        value: *levels.last().unwrap(),
        levels,
        converged,
    })
}

/// Metric length: supremum over partitions of `d_variation`, approached
/// from below by dyadic refinement. A level exceeding `ceiling` stops the
/// run with `diverged = true`; the value is then a certified lower bound.
pub fn d_length(
    space: &LorentzianPreLengthSpace,
    curve: &Curve,
    tol: f64,
    max_depth: u32,
    ceiling: f64,
) -> Result<DLengthResult, CurveError> {
    check_space(space, curve)?;
    assert!(max_depth <= 26, "refinement depth {max_depth} is unreasonable");
    let mut levels: Vec<f64> = Vec::new();
    let mut converged = false;
    let mut diverged = false;
    for depth in 0..=max_depth {
        let pieces = 1u64 << depth;
        let mut total = 0.0;
        let mut prev = curve.eval(curve.a);
        for j in 1..=pieces {
            let t = if j == pieces {
                curve.b
            } else {
                curve.a + (curve.b - curve.a) * j as f64 / pieces as f64
            };
            let next = curve.eval(t);
            total += space.dist(&prev, &next);
            prev = next;
        }
        levels.push(total);
        if total > ceiling {
            diverged = true;
            break;
        }
        if depth > 0 && (total - levels[depth as usize - 1]).abs() <= tol {
            converged = true;
            break;
        }
    }
    Ok(DLengthResult {
        value: *levels.last().unwrap(),
        levels,
        converged,
        diverged,
    })
}
