//! Property tests for the two variation functionals: opposite monotonicity
//! under refinement, additivity across a forced split, and invariance of
//! the length values under reparametrization.

use curves::{d_variation, tau_length, tau_variation, Curve, CurveKind, Partition};
use proptest::prelude::*;
use space_core::{catalog_space, LorentzianPreLengthSpace};

fn mink() -> LorentzianPreLengthSpace {
    catalog_space("minkowski2", &serde_json::Map::new()).unwrap()
}

/// Random timelike polyline with 9 waypoints at params i/8 and x steps
/// bounded well inside the light cone.
fn timelike_polyline() -> impl Strategy<Value = Curve> {
    (
        proptest::collection::vec(-0.9..0.9f64, 8),
        -2.0..2.0f64,
    )
        .prop_map(|(slopes, x0)| {
            let mut pts = Vec::with_capacity(9);
            let mut x = x0;
            pts.push((0.0, x));
            for (i, s) in slopes.iter().enumerate() {
                x += s * 0.125;
                pts.push(((i as f64 + 1.0) * 0.125, x));
            }
            Curve::polyline_tx("minkowski2", CurveKind::Timelike, &pts).unwrap()
        })
}

/// Random partition of [0, 1] containing 0 and 1. Interior points closer
/// than 1e-6 collapse to keep the ordering strict.
fn partition01() -> impl Strategy<Value = Partition> {
    proptest::collection::vec(0.01..0.99f64, 0..6).prop_map(|mut mid| {
        mid.sort_by(f64::total_cmp);
        let mut pts = vec![0.0];
        for m in mid {
            if m - pts.last().unwrap() > 1e-6 {
                pts.push(m);
            }
        }
        pts.push(1.0);
        Partition::new(pts).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    /// Halving every gap can only lower the time-separation sum.
    #[test]
    fn tau_variation_nonincreasing_under_refinement(
        curve in timelike_polyline(),
        part in partition01(),
    ) {
        let s = mink();
        let coarse = tau_variation(&s, &curve, &part).unwrap()
            .expect_finite("coarse").unwrap();
        let fine = tau_variation(&s, &curve, &part.refine_half()).unwrap()
            .expect_finite("fine").unwrap();
        prop_assert!(
            fine <= coarse + 1e-12,
            "refinement raised tau variation: {coarse} -> {fine}"
        );
    }

    /// Halving every gap can only raise the metric sum.
    #[test]
    fn d_variation_nondecreasing_under_refinement(
        curve in timelike_polyline(),
        part in partition01(),
    ) {
        let s = mink();
        let coarse = d_variation(&s, &curve, &part).unwrap();
        let fine = d_variation(&s, &curve, &part.refine_half()).unwrap();
        prop_assert!(
            fine >= coarse - 1e-12,
            "refinement lowered d variation: {coarse} -> {fine}"
        );
    }

    /// Merging refines both inputs, and the merged tau sum is below both.
    #[test]
    fn merge_refines_both_sides(
        curve in timelike_polyline(),
        p in partition01(),
        q in partition01(),
    ) {
        let s = mink();
        let m = p.merge(&q).unwrap();
        prop_assert!(m.refines(&p) && m.refines(&q));
        let vm = tau_variation(&s, &curve, &m).unwrap().expect_finite("m").unwrap();
        let vp = tau_variation(&s, &curve, &p).unwrap().expect_finite("p").unwrap();
        let vq = tau_variation(&s, &curve, &q).unwrap().expect_finite("q").unwrap();
        prop_assert!(vm <= vp.min(vq) + 1e-12, "merge sum {vm} above min({vp}, {vq})");
    }

    /// Splitting at the midpoint: length of the whole equals the sum of the
    /// lengths of the halves. Waypoints sit at multiples of 1/8, so the
    /// dyadic levels of both runs agree exactly from depth 3 on.
    #[test]
    fn tau_length_additive_at_midpoint_split(curve in timelike_polyline()) {
        let s = mink();
        let base = Partition::new(vec![0.0, 0.5, 1.0]).unwrap();
        let whole = tau_length(&s, &curve, 1e-12, 8, Some(&base)).unwrap();
        prop_assert!(whole.converged, "whole-run levels: {:?}", whole.levels);
        let left = tau_length(&s, &curve.restrict(0.0, 0.5).unwrap(), 1e-12, 8, None).unwrap();
        let right = tau_length(&s, &curve.restrict(0.5, 1.0).unwrap(), 1e-12, 8, None).unwrap();
        let w = whole.value.expect_finite("whole").unwrap();
        let l = left.value.expect_finite("left").unwrap();
        let r = right.value.expect_finite("right").unwrap();
        prop_assert!(
            (w - (l + r)).abs() < 1e-9,
            "additivity broke: whole {w}, halves {l} + {r}"
        );
    }

    /// Precomposing with s -> s^p maps the image onto itself, so every
    /// chord sum is a chord sum of the original line and the length values
    /// match exactly.
    #[test]
    fn tau_length_survives_reparametrization(
        slope in -0.9..0.9f64,
        p in 1..4u32,
    ) {
        let s = mink();
        let line = Curve::sloped("minkowski2", 0.0, slope, 0.0, 1.0).unwrap();
        let warped = line.reparametrize((0.0, 1.0), move |u| u.powi(p as i32)).unwrap();
        let a = tau_length(&s, &line, 1e-12, 8, None).unwrap();
        let b = tau_length(&s, &warped, 1e-12, 8, None).unwrap();
        let va = a.value.expect_finite("straight").unwrap();
        let vb = b.value.expect_finite("warped").unwrap();
        prop_assert!((va - vb).abs() < 1e-12, "reparametrization moved the length: {va} vs {vb}");
        let want = (1.0 - slope * slope).sqrt();
        prop_assert!((va - want).abs() < 1e-12, "straight-line length {va}, want {want}");
    }
}
