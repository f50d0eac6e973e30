//! The superseded product-weight length and time separation. Each segment
//! is scored by the factor at BOTH endpoints times the time separation,
//! which punishes partitions whose cut points sit where the factor is
//! small: the infimum chases vanishing end weights instead of the curve's
//! geometry. Kept only to replay those failures (additivity breaks across
//! interior splits, and the induced separation violates the reverse
//! triangle inequality); excluded from every property suite.

use curves::{Curve, CurveKind};
use space_core::{ConformalFactor, ExtReal, LorentzianPreLengthSpace, Point};

use crate::error::ConformalError;

/// Largest number of interior cut points tried exhaustively.
const SUBSET_CAP: usize = 3;

/// Product-weight length: infimum over partitions drawn from a uniform
/// grid of `grid_n` parameters of the sum of
/// `omega(start) * omega(end) * tau(start, end)` per segment. Subsets of
/// up to three interior grid points are scored exhaustively, then the best
/// is slid point by point to neighboring slots while the value drops.
/// A replication device, not a certified infimum.
pub fn prior_conformal_length(
    space: &LorentzianPreLengthSpace,
    omega: &ConformalFactor,
    curve: &Curve,
    grid_n: usize,
) -> Result<f64, ConformalError> {
    assert!(grid_n >= 2, "grid needs at least the two endpoints, got {grid_n}");
    if curve.kind == CurveKind::Unrestricted {
        return Err(ConformalError::WrongCurveKind);
    }
    if space.id != curve.space_id {
        return Err(ConformalError::Curve(curves::CurveError::SpaceMismatch {
            curve: curve.space_id,
            space: space.id,
        }));
    }
    let pts: Vec<Point> = (0..grid_n)
        .map(|j| {
            let t = if j == grid_n - 1 {
                curve.b
            } else {
                curve.a + (curve.b - curve.a) * j as f64 / (grid_n - 1) as f64
            };
            curve.eval(t)
        })
        .collect();
    let weights: Vec<f64> = pts.iter().map(|p| omega.eval(p)).collect();
    let pair = |i: usize, j: usize| -> f64 {
        match space.tau(&pts[i], &pts[j]) {
            ExtReal::Finite(t) => weights[i] * weights[j] * t,
            ExtReal::Infinite => f64::INFINITY,
        }
    };
    let score = |cuts: &[usize]| -> f64 {
        let mut total = 0.0;
        let mut prev = 0;
        for &c in cuts {
            total += pair(prev, c);
            prev = c;
        }
        total + pair(prev, grid_n - 1)
    };
    let last = grid_n - 1;
    let mut best_cuts: Vec<usize> = Vec::new();
    let mut best = score(&best_cuts);
    let consider = |cuts: &[usize], best: &mut f64, best_cuts: &mut Vec<usize>| {
        let v = score(cuts);
        if v < *best {
            *best = v;
            *best_cuts = cuts.to_vec();
        }
    };
    if SUBSET_CAP >= 1 {
        for i in 1..last {
            consider(&[i], &mut best, &mut best_cuts);
        }
    }
    if SUBSET_CAP >= 2 {
        for i in 1..last {
            for j in i + 1..last {
                consider(&[i, j], &mut best, &mut best_cuts);
            }
        }
    }
    if SUBSET_CAP >= 3 {
        for i in 1..last {
            for j in i + 1..last {
                for k in j + 1..last {
                    consider(&[i, j, k], &mut best, &mut best_cuts);
                }
            }
        }
    }
    // Slide descent: move any single cut to an adjacent free slot while
    // that lowers the score, so optima just off the exhaustive cap's
    // reach are still found.
    let mut guard = 0;
    loop {
        guard += 1;
        let mut improved = false;
        for idx in 0..best_cuts.len() {
            for delta in [-1isize, 1] {
                let moved = best_cuts[idx] as isize + delta;
                if moved < 1 || moved as usize >= last {
                    continue;
                }
                let mut cand = best_cuts.clone();
                cand[idx] = moved as usize;
                cand.sort_unstable();
                cand.dedup();
                let v = score(&cand);
                if v < best {
                    best = v;
                    best_cuts = cand;
                    improved = true;
                }
            }
        }
        if !improved || guard > 10 * grid_n {
            break;
        }
    }
    Ok(best)
}

/// Product-weight time separation: the product-weight length of the
/// straight segment from `p` to `q`, zero for pairs that are not causally
/// related. For a factor depending only on time the straight segment
/// maximizes every per-segment term at once (it maximizes each time
/// separation while the weights are pinned by the cut times), so no wider
/// curve search is needed for the replication.
pub fn prior_tau_omega(
    space: &LorentzianPreLengthSpace,
    omega: &ConformalFactor,
    p: &Point,
    q: &Point,
    grid_n: usize,
) -> Result<f64, ConformalError> {
    space.validate_point(p)?;
    space.validate_point(q)?;
    if !space.causally_related(p, q) || p.t() >= q.t() {
        return Ok(0.0);
    }
    let curve = Curve::polyline_tx(
        space.id,
        CurveKind::Causal,
        &[(p.t(), p.x()), (q.t(), q.x())],
    )?;
    prior_conformal_length(space, omega, &curve, grid_n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use space_core::catalog_space;

    #[test]
    fn unit_factor_collapses_to_plain_length() {
        let space = catalog_space("minkowski2", &serde_json::Map::new()).unwrap();
        let omega = ConformalFactor::constant(1.0);
        let curve = Curve::vertical("minkowski2", 0.0, 0.1, 0.9).unwrap();
        let v = prior_conformal_length(&space, &omega, &curve, 32).unwrap();
        assert!(
            (v - 0.8).abs() < 1e-12,
            "unit weights must give the plain time separation, got {v}"
        );
    }

    #[test]
    fn trivial_partition_wins_on_the_shrinking_end_weights() {
        let space = catalog_space("minkowski2", &serde_json::Map::new()).unwrap();
        let omega = ConformalFactor::time_only("t(1-t)", |t| t * (1.0 - t));
        let curve = Curve::vertical("minkowski2", 0.0, 0.25, 0.75).unwrap();
        let v = prior_conformal_length(&space, &omega, &curve, 64).unwrap();
        let want = 0.017578125;
        assert!(
            (v - want).abs() < 1e-12,
            "quarter-inset segment gave {v}, want {want}"
        );
    }
}
