use curves::{Curve, CurveKind};
use discretize::{sprinkle_anchored, BoxRegion, LinkRule};
use serde::{Deserialize, Serialize};
use space_core::num::{adaptive_simpson, golden_max};
use space_core::{ConformalFactor, ExtReal, LorentzianPreLengthSpace, Point, MINKOWSKI2, MINKOWSKI_STRIP};

use crate::error::ConformalError;
use crate::length::conformal_length;

/// Quadrature tolerance for the shooting integrals.
const QUAD_TOL: f64 = 1e-11;
/// Witness polylines carry this many vertices.
const WITNESS_POINTS: usize = 129;
/// Link count used by the sprinkling strategy.
const SPRINKLE_LINKS: usize = 8;

/// How to compute the conformal time separation between two points.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "strategy")]
pub enum TauOmegaStrategy {
    /// Exact shooting solution; flat planar spaces and factors depending
    /// only on `t`.
    ClosedForm,
    /// Maximum over a family of two-segment polylines through a varied
    /// midpoint; certified lower bound.
    CurveFamily { offsets: usize },
    /// Longest weighted path through a sprinkled causal graph on the
    /// surrounding box; an approximation with no bound on either side.
    Dag { n: usize, seed: u64 },
}

pub use space_core::BoundKind;

/// The maximizing object a strategy can exhibit.
#[derive(Clone, Debug)]
pub enum TauWitness {
    Curve(Curve),
    GraphPath(Vec<Point>),
    None,
}

#[derive(Clone, Debug)]
pub struct TauOmegaResult {
    pub value: ExtReal,
    pub bound: BoundKind,
    pub witness: TauWitness,
}

/// Conformal time separation: supremum of weighted lengths over causal
/// curves from `p` to `q`. Zero when `q` is not in the causal future of
/// `p`. See `TauOmegaStrategy` for the available computations and the
/// guarantees each one carries.
pub fn tau_omega(
    space: &LorentzianPreLengthSpace,
    omega: &ConformalFactor,
    p: &Point,
    q: &Point,
    strategy: TauOmegaStrategy,
    tol: f64,
) -> Result<TauOmegaResult, ConformalError> {
    assert!(tol > 0.0, "tolerance must be positive, got {tol}");
    space.validate_point(p)?;
    space.validate_point(q)?;
    match strategy {
        TauOmegaStrategy::ClosedForm => closed_form(space, omega, p, q, tol),
        TauOmegaStrategy::CurveFamily { offsets } => {
            curve_family(space, omega, p, q, offsets, tol)
        }
        TauOmegaStrategy::Dag { n, seed } => dag_strategy(space, omega, p, q, n, seed),
    }
}

/// Exact conformal time separation on the flat planar spaces for a factor
/// depending only on `t`, without building a witness. Errors when the
/// closed form does not apply.
pub(crate) fn closed_form_tau(
    space: &LorentzianPreLengthSpace,
    omega: &ConformalFactor,
    p: &Point,
    q: &Point,
) -> Result<ExtReal, ConformalError> {
    shooting(space, omega, p, q, QUAD_TOL).map(|s| s.value)
}

/// Value-only closed form for bulk callers (cover scoring, graph
/// reweighting): same result as the closed-form strategy of [`tau_omega`]
/// but skips witness construction. `quad_tol` bounds the quadrature error
/// of the underlying integrals.
pub fn tau_omega_value(
    space: &LorentzianPreLengthSpace,
    omega: &ConformalFactor,
    p: &Point,
    q: &Point,
    quad_tol: f64,
) -> Result<ExtReal, ConformalError> {
    assert!(
        quad_tol > 0.0 && quad_tol.is_finite(),
        "quadrature tolerance must be positive and finite, got {quad_tol}"
    );
    space.validate_point(p)?;
    space.validate_point(q)?;
    shooting(space, omega, p, q, quad_tol).map(|s| s.value)
}

struct Shot {
    value: ExtReal,
    /// Shooting parameter of the maximizer; `None` when the pair is not
    /// chronologically related (value zero) or the maximizer is vertical.
    lambda: Option<f64>,
}

fn require_flat_time_factor(
    space: &LorentzianPreLengthSpace,
    omega: &ConformalFactor,
) -> Result<std::sync::Arc<dyn Fn(f64) -> f64 + Send + Sync>, ConformalError> {
    if space.id != MINKOWSKI2 && space.id != MINKOWSKI_STRIP {
        return Err(ConformalError::BadStrategy {
            strategy: "closed_form",
            reason: format!("space `{}` has no shooting solution", space.id),
        });
    }
    omega.time_profile().ok_or_else(|| ConformalError::BadStrategy {
        strategy: "closed_form",
        reason: format!("factor `{}` does not depend on time alone", omega.label),
    })
}

/// Solves the maximization exactly. The maximizer of the weighted length
/// between chronologically related points on the flat plane is a graph
/// `x(t)` with `dx/dt = lambda / sqrt(w(t)^2 + lambda^2)` for a constant
/// `lambda >= 0` chosen so the horizontal displacement matches; its length
/// is the integral of `w(t)^2 / sqrt(w(t)^2 + lambda^2)`.
fn shooting(
    space: &LorentzianPreLengthSpace,
    omega: &ConformalFactor,
    p: &Point,
    q: &Point,
    quad_tol: f64,
) -> Result<Shot, ConformalError> {
    let w = require_flat_time_factor(space, omega)?;
    if !space.chronologically_related(p, q) {
        return Ok(Shot {
            value: ExtReal::ZERO,
            lambda: None,
        });
    }
    let (t0, t1) = (p.t(), q.t());
    let dx = (q.x() - p.x()).abs();
    if dx == 0.0 {
        let v = adaptive_simpson(&|t| w(t), t0, t1, quad_tol);
        return Ok(Shot {
            value: ExtReal::finite(v),
            lambda: None,
        });
    }
    let drift = |lambda: f64| {
        adaptive_simpson(
            &|t| lambda / (w(t).powi(2) + lambda * lambda).sqrt(),
            t0,
            t1,
            quad_tol,
        ) - dx
    };
    let mut hi = 1.0;
    let mut tries = 0;
    while drift(hi) < 0.0 {
        hi *= 2.0;
        tries += 1;
        if tries > 100 {
            return Err(ConformalError::ApproachFailed(format!(
                "shooting parameter not bracketed by {hi:e} for displacement {dx}"
            )));
        }
    }
    let lambda = space_core::num::bisect_root(&drift, 0.0, hi, 200);
    let v = adaptive_simpson(
        &|t| w(t).powi(2) / (w(t).powi(2) + lambda * lambda).sqrt(),
        t0,
        t1,
        quad_tol,
    );
    Ok(Shot {
        value: ExtReal::finite(v),
        lambda: Some(lambda),
    })
}

fn closed_form(
    space: &LorentzianPreLengthSpace,
    omega: &ConformalFactor,
    p: &Point,
    q: &Point,
    tol: f64,
) -> Result<TauOmegaResult, ConformalError> {
    let quad_tol = (tol / 10.0).clamp(1e-13, 1e-6);
    let shot = shooting(space, omega, p, q, quad_tol)?;
    let witness = match (&shot.value, shot.lambda) {
        (ExtReal::Finite(v), _) if *v == 0.0 => TauWitness::None,
        (_, None) => TauWitness::Curve(
            Curve::vertical(space.id, p.x(), p.t(), q.t()).expect("ordered times"),
        ),
        (_, Some(lambda)) => {
            let w = omega.time_profile().expect("checked by shooting");
            let (t0, t1) = (p.t(), q.t());
            let sign = (q.x() - p.x()).signum();
            let speed = |t: f64| lambda / (w(t).powi(2) + lambda * lambda).sqrt();
            let n = WITNESS_POINTS - 1;
            let mut pts = Vec::with_capacity(WITNESS_POINTS);
            let mut x = p.x();
            pts.push((t0, x));
            for i in 1..=n {
                let a = t0 + (t1 - t0) * (i - 1) as f64 / n as f64;
                let b = t0 + (t1 - t0) * i as f64 / n as f64;
                x += sign * adaptive_simpson(&speed, a, b, quad_tol);
                pts.push((if i == n { t1 } else { b }, x));
            }
            // Spread the residual of the cumulative quadrature so the
            // witness ends exactly at `q`.
            let residual = q.x() - pts[n].1;
            for (i, pt) in pts.iter_mut().enumerate() {
                pt.1 += residual * i as f64 / n as f64;
            }
            TauWitness::Curve(
                Curve::polyline_tx(space.id, CurveKind::Timelike, &pts)
                    .expect("witness vertices are time ordered"),
            )
        }
    };
    Ok(TauOmegaResult {
        value: shot.value,
        bound: BoundKind::Exact,
        witness,
    })
}

/// Scans two-segment polylines through a midpoint slid across the causal
/// diamond, keeping the best weighted length. Every candidate is a genuine
/// causal curve, so the maximum is a certified lower bound.
fn curve_family(
    space: &LorentzianPreLengthSpace,
    omega: &ConformalFactor,
    p: &Point,
    q: &Point,
    offsets: usize,
    tol: f64,
) -> Result<TauOmegaResult, ConformalError> {
    if offsets < 2 {
        return Err(ConformalError::BadStrategy {
            strategy: "curve_family",
            reason: format!("need at least 2 offsets, got {offsets}"),
        });
    }
    if !space.chronologically_related(p, q) {
        return Ok(TauOmegaResult {
            value: ExtReal::ZERO,
            bound: BoundKind::Exact,
            witness: TauWitness::None,
        });
    }
    let dt = q.t() - p.t();
    let t_mid = 0.5 * (p.t() + q.t());
    let x_lo = q.x().max(p.x()) - 0.5 * dt;
    let x_hi = q.x().min(p.x()) + 0.5 * dt;
    let margin = 1e-6 * (x_hi - x_lo).max(1e-6);
    let inner_tol = (tol / 10.0).max(1e-10);
    let score = |x_mid: f64| -> Option<(f64, Curve)> {
        let pts = [(p.t(), p.x()), (t_mid, x_mid), (q.t(), q.x())];
        let curve = Curve::polyline_tx(space.id, CurveKind::Causal, &pts).ok()?;
        let len = conformal_length(space, omega, &curve, inner_tol, 14).ok()?;
        Some((len.value.as_finite()?, curve))
    };
    let mut best: Option<(f64, Curve)> = None;
    let lo = x_lo + margin;
    let hi = x_hi - margin;
    if lo >= hi {
        return Err(ConformalError::ApproachFailed(
            "causal diamond is degenerate".to_string(),
        ));
    }
    let mut best_x = lo;
    for i in 0..offsets {
        let x_mid = lo + (hi - lo) * i as f64 / (offsets - 1) as f64;
        if let Some((v, c)) = score(x_mid) {
            if best.as_ref().map_or(true, |(b, _)| v > *b) {
                best = Some((v, c));
                best_x = x_mid;
            }
        }
    }
    let Some((mut best_v, mut best_c)) = best else {
        return Err(ConformalError::ApproachFailed(
            "no midpoint produced a causal candidate".to_string(),
        ));
    };
    let step = (hi - lo) / (offsets - 1) as f64;
    let (px, _) = golden_max(
        &|x: f64| score(x).map_or(f64::NEG_INFINITY, |(v, _)| v),
        (best_x - step).max(lo),
        (best_x + step).min(hi),
        48,
    );
    if let Some((v, c)) = score(px) {
        if v > best_v {
            best_v = v;
            best_c = c;
        }
    }
    Ok(TauOmegaResult {
        value: ExtReal::finite(best_v),
        bound: BoundKind::LowerBound,
        witness: TauWitness::Curve(best_c),
    })
}

/// Sprinkles the box around the causal diamond of the pair, anchors both
/// endpoints, and reads off the longest weighted path. Discretization can
/// land on either side of the supremum.
fn dag_strategy(
    space: &LorentzianPreLengthSpace,
    omega: &ConformalFactor,
    p: &Point,
    q: &Point,
    n: usize,
    seed: u64,
) -> Result<TauOmegaResult, ConformalError> {
    if !space.chronologically_related(p, q) {
        return Ok(TauOmegaResult {
            value: ExtReal::ZERO,
            bound: BoundKind::Exact,
            witness: TauWitness::None,
        });
    }
    let dt = q.t() - p.t();
    let region = BoxRegion::new(
        p.t(),
        q.t(),
        q.x().max(p.x()) - 0.5 * dt,
        q.x().min(p.x()) + 0.5 * dt,
    )?;
    let graph = sprinkle_anchored(
        space,
        region,
        n,
        seed,
        LinkRule::NearestCausal(SPRINKLE_LINKS),
        &[p.clone(), q.clone()],
    )?
    .with_omega(|pt| omega.eval(pt))?;
    let pi = graph.find_node(p, 1e-12).ok_or_else(|| {
        ConformalError::ApproachFailed("anchor p missing from sprinkled graph".to_string())
    })?;
    let qi = graph.find_node(q, 1e-12).ok_or_else(|| {
        ConformalError::ApproachFailed("anchor q missing from sprinkled graph".to_string())
    })?;
    let (value, path) = discretize::dag_tau_omega(&graph, pi, qi);
    Ok(TauOmegaResult {
        value: ExtReal::finite(value),
        bound: BoundKind::Approximation,
        witness: TauWitness::GraphPath(path.iter().map(|&i| graph.node(i).clone()).collect()),
    })
}

/// Ratios `tau_omega(p, a_k) / tau(p, a_k)` (or with reversed arguments
/// when the approach comes from the past) along an approach sequence.
/// The ratio tends to the factor at `p` as the sequence closes in. Errors
/// when some term has zero or infinite plain separation, since the ratio
/// is then meaningless.
pub fn local_ratio(
    space: &LorentzianPreLengthSpace,
    omega: &ConformalFactor,
    p: &Point,
    approach: &dyn Fn(usize) -> Point,
    n_terms: usize,
) -> Result<Vec<f64>, ConformalError> {
    let mut out = Vec::with_capacity(n_terms);
    for k in 0..n_terms {
        let a = approach(k);
        space.validate_point(&a)?;
        let (lo, hi) = if space.causally_related(p, &a) {
            (p.clone(), a)
        } else if space.causally_related(&a, p) {
            (a, p.clone())
        } else {
            return Err(ConformalError::ApproachFailed(format!(
                "term {k} is not causally comparable with the base point"
            )));
        };
        let tau = match space.tau(&lo, &hi) {
            ExtReal::Finite(v) if v > 0.0 => v,
            ExtReal::Finite(_) => {
                return Err(ConformalError::ApproachFailed(format!(
                    "term {k} has zero time separation"
                )))
            }
            ExtReal::Infinite => {
                return Err(ConformalError::ApproachFailed(format!(
                    "term {k} has infinite time separation"
                )))
            }
        };
        let weighted = closed_form_tau(space, omega, &lo, &hi)?
            .expect_finite("closed form on a finite-separation pair")
            .map_err(|e| ConformalError::ApproachFailed(e.to_string()))?;
        out.push(weighted / tau);
    }
    Ok(out)
}

/// One failed instance of the reverse triangle inequality.
#[derive(Clone, Debug, Serialize)]
pub struct TriangleViolation {
    pub index: usize,
    pub outer: ExtReal,
    pub through: ExtReal,
    pub deficit: f64,
}

/// Outcome of a reverse-triangle scan over causally chained triples.
#[derive(Clone, Debug, Serialize)]
pub struct TriangleReport {
    pub checked: usize,
    pub skipped: usize,
    pub violations: Vec<TriangleViolation>,
}

impl TriangleReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks `f(x, z) >= f(x, y) + f(y, z) - tol` on every triple whose legs
/// are causally related; triples that are not chained are skipped and
/// counted. Works for any candidate separation `f`, which is how the
/// superseded definition is caught failing.
pub fn check_reverse_triangle(
    space: &LorentzianPreLengthSpace,
    f: &dyn Fn(&Point, &Point) -> ExtReal,
    triples: &[(Point, Point, Point)],
    tol: f64,
) -> TriangleReport {
    let mut report = TriangleReport {
        checked: 0,
        skipped: 0,
        violations: Vec::new(),
    };
    for (i, (x, y, z)) in triples.iter().enumerate() {
        if !(space.causally_related(x, y) && space.causally_related(y, z)) {
            report.skipped += 1;
            continue;
        }
        report.checked += 1;
        let outer = f(x, z);
        let through = f(x, y) + f(y, z);
        let bad = match (outer, through) {
            (ExtReal::Finite(o), ExtReal::Finite(t)) => o < t - tol,
            (ExtReal::Finite(_), ExtReal::Infinite) => true,
            (ExtReal::Infinite, _) => false,
        };
        if bad {
            let deficit = match (outer, through) {
                (ExtReal::Finite(o), ExtReal::Finite(t)) => t - o,
                _ => f64::INFINITY,
            };
            report.violations.push(TriangleViolation {
                index: i,
                outer,
                through,
                deficit,
            });
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use space_core::catalog_space;

    fn mink() -> LorentzianPreLengthSpace {
        catalog_space("minkowski2", &serde_json::Map::new()).unwrap()
    }

    #[test]
    fn vertical_pair_integrates_the_profile() {
        let space = mink();
        let omega = ConformalFactor::time_only("t(1-t)", |t| t * (1.0 - t));
        let p = Point::d2("minkowski2", 0.25, 0.0);
        let q = Point::d2("minkowski2", 0.75, 0.0);
        let r = tau_omega(&space, &omega, &p, &q, TauOmegaStrategy::ClosedForm, 1e-10).unwrap();
        let v = r.value.expect_finite("vertical pair").unwrap();
        let want = 11.0 / 96.0;
        assert!((v - want).abs() < 1e-9, "value was {v}, want {want}");
        assert_eq!(r.bound, BoundKind::Exact);
        assert!(matches!(r.witness, TauWitness::Curve(_)));
    }

    #[test]
    fn constant_factor_scales_the_plain_separation() {
        let space = mink();
        let omega = ConformalFactor::constant(2.0);
        let p = Point::d2("minkowski2", 0.0, 0.0);
        let q = Point::d2("minkowski2", 1.0, 0.8);
        let r = tau_omega(&space, &omega, &p, &q, TauOmegaStrategy::ClosedForm, 1e-10).unwrap();
        let v = r.value.expect_finite("boosted pair").unwrap();
        let want = 2.0 * 0.6;
        assert!((v - want).abs() < 1e-9, "value was {v}, want {want}");
        if let TauWitness::Curve(c) = &r.witness {
            let end = c.eval(c.b);
            assert!(
                (end.x() - 0.8).abs() < 1e-9,
                "witness must end at the target, got x = {}",
                end.x()
            );
        } else {
            panic!("timelike pair must carry a curve witness");
        }
    }

    #[test]
    fn unrelated_and_null_pairs_are_zero() {
        let space = mink();
        let omega = ConformalFactor::time_only("2+t", |t| 2.0 + t);
        let p = Point::d2("minkowski2", 0.0, 0.0);
        let spacelike = Point::d2("minkowski2", 0.1, 5.0);
        let null = Point::d2("minkowski2", 1.0, 1.0);
        for q in [spacelike, null] {
            let r = tau_omega(&space, &omega, &p, &q, TauOmegaStrategy::ClosedForm, 1e-10).unwrap();
            assert_eq!(r.value, ExtReal::ZERO, "pair to {:?} must be zero", q.coords);
        }
    }

    #[test]
    fn reverse_triangle_scan_flags_a_planted_failure() {
        let space = mink();
        let good = |p: &Point, q: &Point| space.tau(p, q);
        let pts = |a: f64, b: f64, c: f64| {
            (
                Point::d2("minkowski2", a, 0.0),
                Point::d2("minkowski2", b, 0.0),
                Point::d2("minkowski2", c, 0.0),
            )
        };
        let triples = vec![pts(0.0, 0.4, 1.0), pts(0.0, 0.9, 1.3)];
        let report = check_reverse_triangle(&space, &good, &triples, 1e-12);
        assert!(report.holds(), "plain tau must satisfy the reverse triangle");
        assert_eq!(report.checked, 2);
        let broken = |p: &Point, q: &Point| space.tau(p, q).scale(0.5).unwrap();
        let sub = check_reverse_triangle(&space, &broken, &triples, 1e-12);
        assert!(sub.holds(), "scaling preserves the inequality");
        let concave = |p: &Point, q: &Point| match space.tau(p, q) {
            ExtReal::Finite(v) => ExtReal::finite(v.sqrt()),
            ExtReal::Infinite => ExtReal::Infinite,
        };
        let report = check_reverse_triangle(&space, &concave, &triples, 1e-12);
        assert!(
            !report.holds(),
            "square root of tau must violate the reverse triangle"
        );
    }
}
