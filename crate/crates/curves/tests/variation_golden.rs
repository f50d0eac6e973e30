//! Hand-checked variation and length values on catalog spaces.

use curves::{
    causal_check, d_length, d_variation, tau_length, tau_variation, Curve, CurveError, CurveKind,
    Partition,
};
use space_core::{catalog_space, ExtReal, LorentzianPreLengthSpace};

fn space(name: &str) -> LorentzianPreLengthSpace {
    catalog_space(name, &serde_json::Map::new()).unwrap()
}

/// One broken timelike polyline reused across tests: out to x = 0.25 at
/// half time and back. Each leg has slope 1/2.
fn tent_polyline(space_id: &'static str) -> Curve {
    Curve::polyline_tx(space_id, CurveKind::Timelike, &[
        (0.0, 0.0),
        (0.5, 0.25),
        (1.0, 0.0),
    ])
    .unwrap()
}

#[test]
fn golden_vertical_variation_is_elapsed_time() {
    let s = space("minkowski2");
    let c = Curve::vertical("minkowski2", 0.3, 0.1, 0.9).unwrap();
    for n in [1, 2, 7, 32] {
        let p = Partition::uniform(0.1, 0.9, n).unwrap();
        let v = tau_variation(&s, &c, &p).unwrap();
        let v = v.expect_finite("vertical variation").unwrap();
        assert!(
            (v - 0.8).abs() < 1e-12,
            "vertical tau variation at {n} gaps was {v}, want 0.8"
        );
    }
}

#[test]
fn golden_tent_polyline_refinement_decreases_tau() {
    let s = space("minkowski2");
    let c = tent_polyline("minkowski2");
    let coarse = tau_variation(&s, &c, &Partition::trivial(&c)).unwrap();
    let fine = tau_variation(&s, &c, &Partition::uniform(0.0, 1.0, 2).unwrap()).unwrap();
    let coarse = coarse.expect_finite("coarse").unwrap();
    let fine = fine.expect_finite("fine").unwrap();
    assert!((coarse - 1.0).abs() < 1e-12, "single chord was {coarse}, want 1");
    // Two legs of slope 1/2: each contributes sqrt(0.5^2 - 0.25^2).
    let want = 2.0 * (0.25_f64 - 0.0625).sqrt();
    assert!((fine - want).abs() < 1e-12, "split at the kink was {fine}, want {want}");
    assert!(fine < coarse, "tau variation must drop under refinement");
}

#[test]
fn golden_tent_polyline_tau_length_converges_to_sqrt_three_quarters() {
    let s = space("minkowski2");
    let c = tent_polyline("minkowski2");
    let r = tau_length(&s, &c, 1e-12, 12, None).unwrap();
    assert!(r.converged, "tau length did not converge: {:?}", r.levels);
    let v = r.value.expect_finite("tau length").unwrap();
    let want = 0.75_f64.sqrt();
    assert!((v - want).abs() < 1e-9, "tau length was {v}, want {want}");
    for w in r.levels.windows(2) {
        let (a, b) = (
            w[0].expect_finite("level").unwrap(),
            w[1].expect_finite("level").unwrap(),
        );
        assert!(b <= a + 1e-12, "levels must be nonincreasing: {a} then {b}");
    }
}

#[test]
fn golden_tent_polyline_d_length_converges_to_sqrt_five_quarters() {
    let s = space("minkowski2");
    let c = tent_polyline("minkowski2");
    let r = d_length(&s, &c, 1e-12, 12, 100.0).unwrap();
    assert!(r.converged && !r.diverged, "d length did not settle: {:?}", r.levels);
    let want = 1.25_f64.sqrt();
    assert!((r.value - want).abs() < 1e-9, "d length was {}, want {want}", r.value);
    assert!(
        (r.levels[0] - 1.0).abs() < 1e-12,
        "single chord was {}, want 1",
        r.levels[0]
    );
    for w in r.levels.windows(2) {
        assert!(w[1] >= w[0] - 1e-12, "levels must be nondecreasing: {:?}", r.levels);
    }
}

#[test]
fn golden_spacelike_step_is_rejected() {
    let s = space("minkowski2");
    let c = Curve::polyline_tx("minkowski2", CurveKind::Causal, &[
        (0.0, 0.0),
        (0.1, 0.5),
        (0.9, 0.5),
    ])
    .unwrap();
    // The single chord (0,0) -> (0.9, 0.5) is still causal, so the trivial
    // partition passes; the spacelike first leg only shows once the kink
    // is a partition point.
    assert!(tau_variation(&s, &c, &Partition::trivial(&c)).is_ok());
    let err = tau_variation(&s, &c, &Partition::new(vec![0.0, 0.1, 0.9]).unwrap()).unwrap_err();
    match err {
        CurveError::NotCausalBetween(a, b) => {
            assert_eq!((a, b), (0.0, 0.1), "witness interval was ({a}, {b})");
        }
        other => panic!("wrong error: {other:?}"),
    }
    // d variation has no causal precondition and still works.
    let d = d_variation(&s, &c, &Partition::uniform(0.0, 0.9, 2).unwrap()).unwrap();
    assert!(d > 0.0, "d variation should ignore causality, got {d}");
}

#[test]
fn golden_infinite_tau_length_on_infinity_line() {
    let s = space("infinity_line");
    let c = Curve::from_fn("infinity_line", 0.0, 1.0, CurveKind::Causal, |t| {
        space_core::Point::new("infinity_line", vec![t])
    })
    .unwrap();
    let r = tau_length(&s, &c, 1e-9, 8, None).unwrap();
    assert!(r.converged, "two infinite levels should count as converged");
    assert_eq!(r.value, ExtReal::Infinite);
}

#[test]
fn golden_causal_check_flags_fake_timelike_curve() {
    let s = space("minkowski2");
    let bad = Curve::polyline_tx("minkowski2", CurveKind::Timelike, &[(0.0, 0.0), (1.0, 1.5)])
        .unwrap();
    let report = causal_check(&s, &bad, 16).unwrap();
    assert!(!report.ok(), "slope 1.5 cannot be timelike");
    let (a, b) = report.first_violation.unwrap();
    assert!(a < b && a >= 0.0 && b <= 1.0, "witness ({a}, {b}) outside domain");

    let fine = Curve::sloped("minkowski2", 0.0, 0.9, 0.0, 1.0).unwrap();
    assert!(causal_check(&s, &fine, 64).unwrap().ok());

    let free = Curve::polyline_tx("minkowski2", CurveKind::Unrestricted, &[(0.0, 0.0), (1.0, 9.0)])
        .unwrap();
    assert!(causal_check(&s, &free, 16).unwrap().ok(), "unrestricted curves never fail");
}

#[test]
fn golden_space_mismatch_is_rejected() {
    let strip = space("minkowski_strip");
    let c = Curve::vertical("minkowski2", 0.0, 0.2, 0.8).unwrap();
    assert!(matches!(
        tau_variation(&strip, &c, &Partition::trivial(&c)),
        Err(CurveError::SpaceMismatch { .. })
    ));
}
