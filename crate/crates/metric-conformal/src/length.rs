use curves::{Curve, Partition};
use space_core::num::{aitken_limit, golden_min};
use space_core::ConformalFactor;

use crate::bundle::LengthSpaceBundle;
use crate::error::MetricConformalError;

/// Hard cap on a partition sum: past this the supremum is reported as
/// divergent, with the running sum as a lower bound.
pub const DIVERGENCE_CEILING: f64 = 1e12;
/// Relative slack on the refinement-monotonicity and sandwich checks the
/// length driver enforces on itself.
const ENFORCE_SLACK: f64 = 1e-7;
/// Golden-section iterations for a segment minimum of the factor.
const MIN_ITERS: u32 = 28;

/// Supremum estimate from the dyadic driver in [`metric_conformal_length`].
#[derive(Clone, Debug)]
pub struct ConformalLength {
    /// Extrapolated supremum when `converged`, else the last partial sum,
    /// which is a certified lower bound.
    pub value: f64,
    pub converged: bool,
    /// Dyadic depth at which refinement stopped.
    pub depth: usize,
    /// Plain d-variation on the final partition.
    pub d_length: f64,
    /// Smallest and largest factor value seen along the curve.
    pub omega_range: (f64, f64),
}

fn check_curve(
    bundle: &LengthSpaceBundle,
    curve: &Curve,
) -> Result<(), MetricConformalError> {
    if curve.space_id != bundle.id {
        return Err(MetricConformalError::WrongSpace {
            expected: bundle.id,
            got: curve.space_id,
        });
    }
    bundle.validate_point(&curve.eval(curve.a))?;
    bundle.validate_point(&curve.eval(curve.b))?;
    Ok(())
}

/// Minimum of `Omega` along the curve over `[t0, t1]`: endpoint values
/// joined with a golden-section interior search, which is exact up to
/// search tolerance for segments on which the composite is unimodal.
fn segment_min(omega: &ConformalFactor, curve: &Curve, t0: f64, t1: f64) -> f64 {
    let f = |t: f64| omega.eval(&curve.eval(t));
    let ends = f(t0).min(f(t1));
    let (_, interior) = golden_min(&f, t0, t1, MIN_ITERS);
    ends.min(interior)
}

/// Min-weighted conformal variation over an explicit partition:
/// each segment contributes its factor minimum times its chord distance.
/// `seg_samples` uniform samples (endpoints included) seed the minimum
/// search on every segment.
pub fn metric_conformal_variation(
    bundle: &LengthSpaceBundle,
    omega: &ConformalFactor,
    curve: &Curve,
    partition: &Partition,
    seg_samples: usize,
) -> Result<f64, MetricConformalError> {
    assert!(
        seg_samples >= 2,
        "segment sampling needs both endpoints, got {seg_samples}"
    );
    check_curve(bundle, curve)?;
    partition.validate_for(curve)?;
    let pts = partition.points();
    let mut total = 0.0;
    for w in pts.windows(2) {
        let (t0, t1) = (w[0], w[1]);
        let mut m = f64::INFINITY;
        for j in 0..seg_samples {
            let t = t0 + (t1 - t0) * j as f64 / (seg_samples - 1) as f64;
            m = m.min(omega.eval(&curve.eval(t)));
        }
        m = m.min(segment_min(omega, curve, t0, t1));
        let d = bundle.dist(&curve.eval(t0), &curve.eval(t1));
        total += m * d;
    }
    Ok(total)
}

/// Conformal length as the supremum of min-weighted variations over
/// dyadic partitions. Refinement stops once the raw increment falls under
/// a quarter of `tol`, or once the Aitken-extrapolated limit moves less
/// than half of `tol` between depths (the extrapolation removes the
/// leading geometric error of the min-weighting, so its drift bounds the
/// remaining error). Hitting `max_depth` instead returns the last sum
/// unconverged as a lower bound; sums past [`DIVERGENCE_CEILING`] stop
/// the same way. The driver enforces refinement monotonicity and the
/// factor-range sandwich on itself at every depth.
pub fn metric_conformal_length(
    bundle: &LengthSpaceBundle,
    omega: &ConformalFactor,
    curve: &Curve,
    tol: f64,
    max_depth: usize,
) -> Result<ConformalLength, MetricConformalError> {
    assert!(tol > 0.0 && tol.is_finite(), "tolerance must be positive, got {tol}");
    check_curve(bundle, curve)?;
    let mut partition = Partition::trivial(curve);
    let mut values: Vec<f64> = Vec::new();
    let mut d_length = 0.0;
    let mut omega_range = (f64::INFINITY, f64::NEG_INFINITY);

    for depth in 0..=max_depth {
        let pts = partition.points();
        let mut v = 0.0;
        let mut dv = 0.0;
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for w in pts.windows(2) {
            let m = segment_min(omega, curve, w[0], w[1]);
            let ends = omega
                .eval(&curve.eval(w[0]))
                .max(omega.eval(&curve.eval(w[1])));
            lo = lo.min(m);
            hi = hi.max(ends);
            let d = bundle.dist(&curve.eval(w[0]), &curve.eval(w[1]));
            v += m * d;
            dv += d;
        }
        d_length = dv;
        omega_range = (lo, hi);
        assert!(
            v >= lo * dv - ENFORCE_SLACK * (1.0 + v.abs())
                && v <= hi * dv + ENFORCE_SLACK * (1.0 + v.abs()),
            "variation {v} left the sandwich [{}, {}]",
            lo * dv,
            hi * dv
        );
        if let Some(&prev) = values.last() {
            assert!(
                v >= prev - ENFORCE_SLACK * (1.0 + prev.abs()),
                "variation fell from {prev} to {v} under refinement"
            );
        }
        values.push(v);
        if v >= DIVERGENCE_CEILING {
            return Ok(ConformalLength {
                value: v,
                converged: false,
                depth,
                d_length,
                omega_range,
            });
        }
        let settled = if values.len() >= 2 {
            let inc = v - values[values.len() - 2];
            inc.abs() <= 0.25 * tol * v.abs().max(1.0)
                || (values.len() >= 4 && {
                    let est = aitken_limit(&values);
                    let prev = aitken_limit(&values[..values.len() - 1]);
                    (est - prev).abs() <= 0.5 * tol * est.abs().max(1.0)
                })
        } else {
            false
        };
        if settled {
            let value = aitken_limit(&values).max(v);
            return Ok(ConformalLength {
                value,
                converged: true,
                depth,
                d_length,
                omega_range,
            });
        }
        partition = partition.refine_half();
    }
    Ok(ConformalLength {
        value: *values.last().expect("at least one depth ran"),
        converged: false,
        depth: max_depth,
        d_length,
        omega_range,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bundle::{catalog_bundle, INTERVAL_OPEN};
    use curves::CurveKind;
    use space_core::Point;

    fn segment(a: f64, b: f64) -> Curve {
        Curve::from_fn(INTERVAL_OPEN, a, b, CurveKind::Unrestricted, move |t| {
            Point::d1(INTERVAL_OPEN, t)
        })
        .expect("segment curve")
    }

    fn nomizu() -> ConformalFactor {
        ConformalFactor::time_only("1/min(t,1-t)", |t| 1.0 / t.min(1.0 - t))
    }

    #[test]
    fn hand_variation_values_on_the_coarse_partitions() {
        let bundle = catalog_bundle(INTERVAL_OPEN).unwrap();
        let curve = segment(0.25, 0.5);
        let coarse = Partition::new(vec![0.25, 0.5]).unwrap();
        let v = metric_conformal_variation(&bundle, &nomizu(), &curve, &coarse, 9).unwrap();
        assert!((v - 0.5).abs() < 1e-9, "one segment, min 2 times length 0.25, got {v}");
        let finer = Partition::new(vec![0.25, 0.375, 0.5]).unwrap();
        let v2 = metric_conformal_variation(&bundle, &nomizu(), &curve, &finer, 9).unwrap();
        assert!(
            (v2 - 7.0 / 12.0).abs() < 1e-9,
            "split at 0.375 raises the sum to 7/12, got {v2}"
        );
        assert!(v2 > v, "refinement may only raise the variation");
    }

    #[test]
    fn unit_factor_reduces_to_plain_variation() {
        let bundle = catalog_bundle(INTERVAL_OPEN).unwrap();
        let curve = segment(0.2, 0.9);
        let p = Partition::uniform(0.2, 0.9, 7).unwrap();
        let v =
            metric_conformal_variation(&bundle, &ConformalFactor::constant(1.0), &curve, &p, 4)
                .unwrap();
        assert!((v - 0.7).abs() < 1e-12, "unit weight gives the chord sum, got {v}");
    }

    #[test]
    fn dyadic_length_recovers_the_log_integrals() {
        let bundle = catalog_bundle(INTERVAL_OPEN).unwrap();
        let tol = 1e-4;
        let got = metric_conformal_length(&bundle, &nomizu(), &segment(0.25, 0.5), tol, 16)
            .unwrap();
        assert!(got.converged, "quarter-to-half segment must converge");
        assert!(
            (got.value - 2f64.ln()).abs() <= tol,
            "expected ln 2, got {} at depth {}",
            got.value,
            got.depth
        );
        let wide = metric_conformal_length(&bundle, &nomizu(), &segment(0.05, 0.5), tol, 18)
            .unwrap();
        assert!(
            (wide.value - 10f64.ln()).abs() <= tol,
            "expected ln 10, got {}",
            wide.value
        );
    }

    #[test]
    fn starved_depth_reports_a_lower_bound() {
        let bundle = catalog_bundle(INTERVAL_OPEN).unwrap();
        let got = metric_conformal_length(&bundle, &nomizu(), &segment(0.05, 0.5), 1e-10, 3)
            .unwrap();
        assert!(!got.converged, "3 dyadic levels cannot reach 1e-10");
        assert!(
            got.value < 10f64.ln(),
            "partial sums stay under the supremum, got {}",
            got.value
        );
    }

    #[test]
    fn ceiling_stops_runaway_sums() {
        let bundle = catalog_bundle(INTERVAL_OPEN).unwrap();
        let huge = ConformalFactor::constant(1e13);
        let got = metric_conformal_length(&bundle, &huge, &segment(0.2, 0.8), 1e-6, 10).unwrap();
        assert!(!got.converged, "a sum past the ceiling is not a limit");
        assert!(got.value >= DIVERGENCE_CEILING, "got {}", got.value);
    }
}
