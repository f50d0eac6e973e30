//! Frozen values for the catalog evaluators.

use space_core::{catalog_space, ExtReal, Point, SpaceError};

fn space(name: &str) -> space_core::LorentzianPreLengthSpace {
    catalog_space(name, &serde_json::Map::new()).unwrap()
}

#[test]
fn golden_minkowski_tau_sqrt3() {
    let s = space("minkowski2");
    let p = Point::d2("minkowski2", 0.0, 0.0);
    let q = Point::d2("minkowski2", 2.0, 1.0);
    let tau = s.tau(&p, &q).as_finite().unwrap();
    assert!((tau - 3f64.sqrt()).abs() < 1e-15, "tau = {tau}");
    assert!(s.chronologically_related(&p, &q));
    // Null pair: related, tau = 0.
    let n = Point::d2("minkowski2", 1.0, 1.0);
    assert!(s.causally_related(&p, &n));
    assert!(!s.chronologically_related(&p, &n));
    assert_eq!(s.tau(&p, &n), ExtReal::ZERO);
    // Spacelike pair: unrelated both ways.
    let sp = Point::d2("minkowski2", 0.5, 2.0);
    assert!(!s.causally_related(&p, &sp));
    assert_eq!(s.tau(&p, &sp), ExtReal::ZERO);
    assert_eq!(s.tau(&q, &p), ExtReal::ZERO);
}

#[test]
fn golden_strip_shares_formulas_but_trims_domain() {
    let s = space("minkowski_strip");
    let p = Point::d2("minkowski_strip", 0.1, 0.0);
    let q = Point::d2("minkowski_strip", 0.9, 0.3);
    let tau = s.tau(&p, &q).as_finite().unwrap();
    assert!((tau - (0.64_f64 - 0.09).sqrt()).abs() < 1e-15);
    assert!(matches!(
        s.validate_point(&Point::d2("minkowski_strip", 1.0, 0.0)),
        Err(SpaceError::OutsideDomain { .. })
    ));
    assert!(matches!(
        s.validate_point(&Point::d2("minkowski_strip", -0.5, 0.0)),
        Err(SpaceError::OutsideDomain { .. })
    ));
}

#[test]
fn golden_infinity_line_finiteness_failure() {
    let s = space("infinity_line");
    let a = Point::d1("infinity_line", 0.0);
    let b = Point::d1("infinity_line", 1.0);
    assert_eq!(s.tau(&a, &b), ExtReal::Infinite);
    assert_eq!(s.tau(&b, &a), ExtReal::ZERO);
    assert!(s.chronologically_related(&a, &b));
    assert!(s.causally_related(&a, &a));
    assert!(!s.chronologically_related(&a, &a));
}

#[test]
fn golden_imprison_w_tau_is_time_difference() {
    let s = space("imprison_W");
    let spiral = |t: f64| Point::d2("imprison_W", t, t * (1.0 / t).sin());
    let p = spiral(-0.2);
    let q = spiral(-0.05);
    let r = Point::d2("imprison_W", 0.25, 0.0);
    assert_eq!(s.tau(&p, &q), ExtReal::finite(0.15000000000000002));
    let tau_pr = s.tau(&p, &r).as_finite().unwrap();
    assert!((tau_pr - 0.45).abs() < 1e-15);
    // Reverse triangle is additive equality here.
    let sum = s.tau(&p, &q).as_finite().unwrap() + s.tau(&q, &r).as_finite().unwrap();
    assert!((tau_pr - sum).abs() < 1e-15);
    assert!(s.contains(&Point::d2("imprison_W", 0.0, 0.0)));
    assert!(!s.contains(&Point::d2("imprison_W", 0.0, 0.5)));
}

#[test]
fn golden_funnel_x_validation() {
    let s = space("funnel_X");
    // The removed peak is not a point of X.
    assert!(!s.contains(&Point::d2("funnel_X", 0.0, 1.0)));
    // Tent bottoms approach it.
    for n in 1..8u32 {
        let apex = Point::d2("funnel_X", 0.0, 1.0 - 1.0 / n as f64);
        assert!(s.contains(&apex), "tent {n} apex missing");
    }
    // Arm endpoints are present.
    assert!(s.contains(&Point::d2("funnel_X", -1.0, 0.0)));
    assert!(s.contains(&Point::d2("funnel_X", 1.0, 0.0)));
}
