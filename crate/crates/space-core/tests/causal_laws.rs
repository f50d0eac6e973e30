//! Causal bookkeeping laws: push-up, reverse triangle, sign agreement of
//! tau with the chronology, on every catalog space.

use proptest::prelude::*;
use space_core::{catalog_names, catalog_space, ExtReal, Point};

#[test]
fn push_up_check_is_clean_on_every_catalog_space() {
    for name in catalog_names() {
        let s = catalog_space(name, &serde_json::Map::new()).unwrap();
        let report = space_core::push_up_check(&s, 3000, 0xC0FFEE);
        assert!(
            report.ok(),
            "{name}: {} violations, first: {:?}",
            report.violations.len(),
            report.violations.first()
        );
        assert_eq!(report.triples_checked, 3000);
    }
}

fn mink_point(t: f64, x: f64) -> Point {
    Point::d2("minkowski2", t, x)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    /// Reverse triangle on causally ordered Minkowski triples, built with a
    /// margin so the ordering is robust under rounding.
    #[test]
    fn golden_minkowski_reverse_triangle(
        t0 in -2.0_f64..2.0,
        x0 in -2.0_f64..2.0,
        dt1 in 0.01_f64..2.0,
        dt2 in 0.01_f64..2.0,
        f1 in -0.99_f64..0.99,
        f2 in -0.99_f64..0.99,
    ) {
        let s = catalog_space("minkowski2", &serde_json::Map::new()).unwrap();
        let p = mink_point(t0, x0);
        let q = mink_point(t0 + dt1, x0 + f1 * dt1);
        let r = mink_point(t0 + dt1 + dt2, x0 + f1 * dt1 + f2 * dt2);
        prop_assert!(s.causally_related(&p, &q));
        prop_assert!(s.causally_related(&q, &r));
        let direct = s.tau(&p, &r).as_finite().unwrap();
        let through = s.tau(&p, &q).as_finite().unwrap() + s.tau(&q, &r).as_finite().unwrap();
        prop_assert!(direct >= through - 1e-12 * (1.0 + through),
            "tau(p,r)={direct} < tau(p,q)+tau(q,r)={through}");
    }

    #[test]
    fn golden_minkowski_tau_sign_matches_chronology(
        t0 in -2.0_f64..2.0, x0 in -2.0_f64..2.0,
        t1 in -2.0_f64..2.0, x1 in -2.0_f64..2.0,
    ) {
        let s = catalog_space("minkowski2", &serde_json::Map::new()).unwrap();
        let p = mink_point(t0, x0);
        let q = mink_point(t1, x1);
        let tau = s.tau(&p, &q);
        prop_assert_eq!(s.chronologically_related(&p, &q), tau.is_positive());
        if !s.causally_related(&p, &q) {
            prop_assert_eq!(tau, ExtReal::ZERO);
        }
    }

    /// Push-up through a near-null edge: p << q, then q -> r causal with a
    /// tiny sub-null margin (pure null steps are fragile under fp rounding),
    /// gives p << r.
    #[test]
    fn golden_minkowski_push_up_through_null(
        dt in 0.05_f64..2.0,
        f in -0.9_f64..0.9,
        null_dt in 0.01_f64..1.0,
        dir in proptest::bool::ANY,
    ) {
        let s = catalog_space("minkowski2", &serde_json::Map::new()).unwrap();
        let p = mink_point(0.0, 0.0);
        let q = mink_point(dt, f * dt);
        let sign = if dir { 1.0 } else { -1.0 };
        let r = mink_point(dt + null_dt, f * dt + sign * null_dt * (1.0 - 1e-9));
        prop_assert!(s.chronologically_related(&p, &q));
        prop_assert!(s.causally_related(&q, &r));
        prop_assert!(s.chronologically_related(&p, &r), "push-up failed");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    /// Sampled push-up on the branch spaces, whose relations are case tables
    /// rather than coordinate inequalities.
    #[test]
    fn push_up_on_branch_spaces(
        name_ix in 4usize..7,
        k in 0u64..500_000,
        j in 0u64..500_000,
        l in 0u64..500_000,
    ) {
        let s = catalog_space(catalog_names()[name_ix], &serde_json::Map::new()).unwrap();
        let x = s.sample_point(k);
        let y = s.sample_point(j);
        let z = s.sample_point(l);
        if s.causally_related(&x, &y) && s.chronologically_related(&y, &z) {
            prop_assert!(s.chronologically_related(&x, &z));
        }
        if s.chronologically_related(&x, &y) && s.causally_related(&y, &z) {
            prop_assert!(s.chronologically_related(&x, &z));
        }
        // Causality is transitive.
        if s.causally_related(&x, &y) && s.causally_related(&y, &z) {
            prop_assert!(s.causally_related(&x, &z));
        }
    }
}
