use curves::{Curve, CurveKind, Partition};
use metric_conformal::{
    catalog_bundle, d_omega, metric_conformal_length, metric_conformal_variation,
    nomizu_ozeki_rho, DOmegaStrategy, EUCLID_PLANE, INTERVAL_OPEN, TWO_INTERVALS,
};
use proptest::prelude::*;
use space_core::{ConformalFactor, MetricStructure, Point};

/// Refinement may lose at most this much to segment-minimum search error.
const MONO_SLACK: f64 = 1e-9;
/// Tolerance handed to the dyadic machinery in the composition test.
const COMP_TOL: f64 = 1e-5;
/// Triangle slack for curve-family distances, two endpoint biases wide.
const TRIANGLE_TOL: f64 = 1e-3;

/// Quadratic-in-t factor kept above 1/2 on [0, 1] by construction.
fn poly_factor(a: f64, b: f64, c: f64) -> ConformalFactor {
    ConformalFactor::time_only("a+bt+ct^2", move |t| a + b * t + c * t * t)
}

fn poly_antiderivative(a: f64, b: f64, c: f64, t: f64) -> f64 {
    a * t + b * t * t / 2.0 + c * t * t * t / 3.0
}

fn poly_min_max(a: f64, b: f64, c: f64, lo: f64, hi: f64) -> (f64, f64) {
    let f = |t: f64| a + b * t + c * t * t;
    let mut min = f(lo).min(f(hi));
    let mut max = f(lo).max(f(hi));
    if c != 0.0 {
        let vertex = -b / (2.0 * c);
        if lo < vertex && vertex < hi {
            min = min.min(f(vertex));
            max = max.max(f(vertex));
        }
    }
    (min, max)
}

fn open_segment(a: f64, b: f64) -> Curve {
    Curve::from_fn(INTERVAL_OPEN, a, b, CurveKind::Unrestricted, |t| {
        Point::d1(INTERVAL_OPEN, t)
    })
    .unwrap()
}

fn coeff_strategy() -> impl Strategy<Value = (f64, f64, f64)> {
    (1.5..3.0f64, -0.5..0.5f64, -0.5..0.5f64)
}

fn range_strategy() -> impl Strategy<Value = (f64, f64)> {
    (0.05..0.6f64, 0.1..0.35f64).prop_map(|(lo, len)| (lo, lo + len))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn variation_never_drops_under_refinement(
        (a, b, c) in coeff_strategy(),
        (lo, hi) in range_strategy(),
        cells in 1usize..6,
    ) {
        let bundle = catalog_bundle(INTERVAL_OPEN).unwrap();
        let omega = poly_factor(a, b, c);
        let curve = open_segment(lo, hi);
        let coarse = Partition::uniform(lo, hi, cells).unwrap();
        let fine = coarse.refine_half();
        let v_coarse =
            metric_conformal_variation(&bundle, &omega, &curve, &coarse, 9).unwrap();
        let v_fine = metric_conformal_variation(&bundle, &omega, &curve, &fine, 9).unwrap();
        prop_assert!(
            v_fine >= v_coarse - MONO_SLACK,
            "halving cells dropped the sum: {v_coarse} -> {v_fine}"
        );
    }

    #[test]
    fn plane_variation_never_drops_under_refinement(
        (a, b, c) in coeff_strategy(),
        (x0, y0, x1) in (-0.8..0.8f64, -0.8..0.8f64, -0.8..0.8f64),
    ) {
        let bundle = catalog_bundle(EUCLID_PLANE).unwrap();
        let radial = ConformalFactor::from_fn("a+b r^2", move |p: &Point| {
            let r2 = p.coords[0] * p.coords[0] + p.coords[1] * p.coords[1];
            a + b.abs() * r2 + c.abs() * r2 * r2
        });
        let y1 = -y0;
        let arc = Curve::from_fn(EUCLID_PLANE, 0.0, 1.0, CurveKind::Unrestricted, move |s| {
            Point::d2(
                EUCLID_PLANE,
                x0 + s * (x1 - x0),
                y0 + s * (y1 - y0) + 0.3 * (std::f64::consts::PI * s).sin(),
            )
        })
        .unwrap();
        let coarse = Partition::uniform(0.0, 1.0, 3).unwrap();
        let fine = coarse.refine_half();
        let v_coarse = metric_conformal_variation(&bundle, &radial, &arc, &coarse, 9).unwrap();
        let v_fine = metric_conformal_variation(&bundle, &radial, &arc, &fine, 9).unwrap();
        prop_assert!(
            v_fine >= v_coarse - MONO_SLACK,
            "plane refinement dropped the sum: {v_coarse} -> {v_fine}"
        );
    }

    #[test]
    fn length_sits_between_the_factor_extremes(
        (a, b, c) in coeff_strategy(),
        (lo, hi) in range_strategy(),
    ) {
        let bundle = catalog_bundle(INTERVAL_OPEN).unwrap();
        let omega = poly_factor(a, b, c);
        let curve = open_segment(lo, hi);
        let len = metric_conformal_length(&bundle, &omega, &curve, 1e-6, 24).unwrap();
        prop_assert!(len.converged, "smooth factor lengths settle");
        let (f_min, f_max) = poly_min_max(a, b, c, lo, hi);
        let plain = hi - lo;
        prop_assert!(
            f_min * plain - 1e-7 <= len.value && len.value <= f_max * plain + 1e-7,
            "length {} escaped the sandwich [{}, {}]",
            len.value,
            f_min * plain,
            f_max * plain
        );
        let exact = poly_antiderivative(a, b, c, hi) - poly_antiderivative(a, b, c, lo);
        prop_assert!(
            (len.value - exact).abs() < 1e-4,
            "dyadic limit {} should match the integral {exact}",
            len.value
        );
    }

    #[test]
    fn net_distances_form_a_metric(
        (a, b, c) in coeff_strategy(),
        (iu, iv, iw) in (5usize..95, 5usize..95, 5usize..95),
    ) {
        let bundle = catalog_bundle(INTERVAL_OPEN).unwrap();
        let omega = poly_factor(a, b, c);
        let step = 0.01;
        let at = |i: usize| Point::d1(INTERVAL_OPEN, i as f64 * step);
        let strategy = DOmegaStrategy::Graph { step };
        let d = |p: &Point, q: &Point| {
            d_omega(&bundle, &omega, p, q, strategy, 1e-8)
                .unwrap()
                .value
                .as_finite()
                .unwrap()
        };
        let (u, v, w) = (at(iu), at(iv), at(iw));
        let duv = d(&u, &v);
        let dvu = d(&v, &u);
        prop_assert!(
            (duv - dvu).abs() <= 1e-12,
            "net distance must be symmetric: {duv} vs {dvu}"
        );
        let duw = d(&u, &w);
        let dvw = d(&v, &w);
        prop_assert!(
            duw <= duv + dvw + 1e-12,
            "net triangle failed: d(u,w) = {duw} > {duv} + {dvw}"
        );
    }

    #[test]
    fn family_distances_satisfy_a_slack_triangle(
        (a, b) in (1.5..3.0f64, 0.0..0.5f64),
        (px, py, qx, qy, rx, ry) in (
            -0.6..0.6f64, -0.6..0.6f64, -0.6..0.6f64,
            -0.6..0.6f64, -0.6..0.6f64, -0.6..0.6f64,
        ),
    ) {
        let bundle = catalog_bundle(EUCLID_PLANE).unwrap();
        let radial = ConformalFactor::from_fn("a+b r^2", move |p: &Point| {
            a + b * (p.coords[0] * p.coords[0] + p.coords[1] * p.coords[1])
        });
        let strategy = DOmegaStrategy::CurveFamily { offsets: 2 };
        let d = |x: &Point, y: &Point| {
            d_omega(&bundle, &radial, x, y, strategy, 1e-6)
                .unwrap()
                .value
                .as_finite()
                .unwrap()
        };
        let p = Point::d2(EUCLID_PLANE, px, py);
        let q = Point::d2(EUCLID_PLANE, qx, qy);
        let r = Point::d2(EUCLID_PLANE, rx, ry);
        let direct = d(&p, &r);
        let via = d(&p, &q) + d(&q, &r);
        prop_assert!(
            direct <= via + 2.0 * TRIANGLE_TOL,
            "family triangle failed: direct {direct} > via {via}"
        );
    }

    #[test]
    fn rescaling_composes_multiplicatively(
        (a, b, _c) in coeff_strategy(),
        (a2, b2) in (0.5..2.5f64, -0.4..0.4f64),
        (lo, hi) in range_strategy(),
    ) {
        let base = catalog_bundle(INTERVAL_OPEN).unwrap();
        let first = poly_factor(a, b, 0.0);
        // The once-rescaled space carries the closed-form weighted metric.
        let derived = base.with_metric(MetricStructure::new(move |p: &Point, q: &Point| {
            let (x, y) = (p.coords[0], q.coords[0]);
            (poly_antiderivative(a, b, 0.0, y) - poly_antiderivative(a, b, 0.0, x)).abs()
        }));
        let second = poly_factor(a2, b2, 0.0);
        let p = Point::d1(INTERVAL_OPEN, lo);
        let q = Point::d1(INTERVAL_OPEN, hi);
        let twice = d_omega(
            &derived,
            &second,
            &p,
            &q,
            DOmegaStrategy::CurveFamily { offsets: 0 },
            COMP_TOL,
        )
        .unwrap()
        .value
        .as_finite()
        .unwrap();
        let product = ConformalFactor::product(&first, &second);
        let once = d_omega(&base, &product, &p, &q, DOmegaStrategy::ClosedForm, 1e-10)
            .unwrap()
            .value
            .as_finite()
            .unwrap();
        prop_assert!(
            (twice - once).abs() <= 5.0 * COMP_TOL,
            "composed rescaling drifted: two-step {twice} vs product {once}"
        );
    }

    #[test]
    fn compactness_radius_is_one_lipschitz(
        (x, y) in (0.02..0.98f64, 0.02..0.98f64),
        second_component in any::<bool>(),
    ) {
        let (bundle, shift) = if second_component {
            (catalog_bundle(TWO_INTERVALS).unwrap(), 2.0)
        } else {
            (catalog_bundle(INTERVAL_OPEN).unwrap(), 0.0)
        };
        let id = bundle.id;
        let rho = |t: f64| {
            nomizu_ozeki_rho(&bundle, &Point::d1(id, t))
                .unwrap()
                .as_finite()
                .expect("open components have finite radii")
        };
        let (rx, ry) = (rho(x + shift), rho(y + shift));
        prop_assert!(
            (rx - ry).abs() <= (x - y).abs() + 1e-9,
            "radius jumped faster than the points moved: |{rx} - {ry}| > |{x} - {y}|"
        );
    }
}
