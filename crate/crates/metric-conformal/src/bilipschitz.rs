use space_core::num::adaptive_simpson;
use space_core::{ConformalFactor, Point};

use crate::bundle::LengthSpaceBundle;
use crate::error::MetricConformalError;

/// Smallest radius tried before giving up.
const RADIUS_FLOOR: f64 = 1e-6;
/// Sample offsets per axis inside the trial ball, as fractions of the
/// radius. Zero is excluded so every pair is distinct from the center.
const OFFSETS: [f64; 8] = [-1.0, -0.75, -0.5, -0.25, 0.25, 0.5, 0.75, 1.0];
/// Quadrature tolerance for 1-d conformal distances between samples.
const PAIR_TOL: f64 = 1e-11;

/// A radius certificate: inside it the rescaled metric is squeezed
/// between `(Omega(x) - eps) d` and `(Omega(x) + eps) d` on the sampled
/// pairs.
#[derive(Clone, Debug)]
pub struct BilipschitzCert {
    pub radius: f64,
    /// Sampled pair whose ratio `d_Omega / d` sat farthest from
    /// `Omega(x)`.
    pub worst_pair: (Point, Point),
    pub worst_ratio: f64,
}

fn sample_points(
    bundle: &LengthSpaceBundle,
    x: &Point,
    r: f64,
) -> Vec<Point> {
    let id = bundle.id;
    let mut pts = vec![x.clone()];
    if bundle.dim == 1 {
        let c = x.coords[0];
        pts.extend(OFFSETS.iter().map(|&o| Point::d1(id, c + o * r)));
    } else {
        let (cx, cy) = (x.coords[0], x.coords[1]);
        for &ox in &OFFSETS {
            pts.push(Point::d2(id, cx + ox * r, cy));
            pts.push(Point::d2(id, cx, cy + ox * r));
        }
    }
    pts
}

/// Conformal distance between two sampled points, cheap enough to run on
/// every pair: exact quadrature on a 1-d bundle, straight-chord length
/// in the plane (the correct local comparison for a squeeze around `x`).
fn pair_d_omega(
    bundle: &LengthSpaceBundle,
    omega: &ConformalFactor,
    p: &Point,
    q: &Point,
) -> f64 {
    let id = bundle.id;
    if bundle.dim == 1 {
        let (a, b) = (p.coords[0].min(q.coords[0]), p.coords[0].max(q.coords[0]));
        if a == b {
            return 0.0;
        }
        let f = |t: f64| omega.eval(&Point::d1(id, t));
        adaptive_simpson(&f, a, b, PAIR_TOL)
    } else {
        let chord = bundle.dist(p, q);
        let f = |s: f64| {
            let pt = Point::d2(
                id,
                p.coords[0] + s * (q.coords[0] - p.coords[0]),
                p.coords[1] + s * (q.coords[1] - p.coords[1]),
            );
            omega.eval(&pt)
        };
        chord * adaptive_simpson(&f, 0.0, 1.0, PAIR_TOL)
    }
}

/// Searches for a radius around `x` where the rescaled metric is
/// `(Omega(x) +- eps)`-bilipschitz to the plain one on sampled pairs.
/// Starts from half the boundary distance (or 1 when every ball is
/// compact) and halves until the squeeze holds or the radius floor is
/// hit.
///
/// # Errors
/// `EpsOutOfRange` unless `0 < eps < Omega(x)`; `Inconclusive` when no
/// radius above the floor certifies.
pub fn bilipschitz_probe(
    bundle: &LengthSpaceBundle,
    omega: &ConformalFactor,
    x: &Point,
    eps: f64,
) -> Result<BilipschitzCert, MetricConformalError> {
    bundle.validate_point(x)?;
    let omega_x = omega.eval(x);
    if !(eps > 0.0) || eps >= omega_x {
        return Err(MetricConformalError::EpsOutOfRange { eps, omega_x });
    }
    let mut radius = match bundle.dim {
        1 => {
            let c = bundle
                .component_of(x.coords[0])
                .expect("validated point sits in a component");
            if c.closed {
                0.5 * (c.hi - c.lo).min(2.0)
            } else {
                0.5 * (x.coords[0] - c.lo).min(c.hi - x.coords[0])
            }
        }
        _ => 1.0,
    };
    let (lo_slope, hi_slope) = (omega_x - eps, omega_x + eps);
    while radius >= RADIUS_FLOOR {
        let pts: Vec<Point> = sample_points(bundle, x, radius)
            .into_iter()
            .filter(|p| bundle.contains(p))
            .collect();
        let mut worst: Option<(f64, (Point, Point))> = None;
        let mut certified = true;
        'pairs: for i in 0..pts.len() {
            for j in (i + 1)..pts.len() {
                let d = bundle.dist(&pts[i], &pts[j]);
                if d == 0.0 {
                    continue;
                }
                let ratio = pair_d_omega(bundle, omega, &pts[i], &pts[j]) / d;
                let off = (ratio - omega_x).abs();
                if worst.as_ref().is_none_or(|(w, _)| off > (w - omega_x).abs()) {
                    worst = Some((ratio, (pts[i].clone(), pts[j].clone())));
                }
                if !(lo_slope <= ratio && ratio <= hi_slope) {
                    certified = false;
                    break 'pairs;
                }
            }
        }
        if certified {
            if let Some((worst_ratio, worst_pair)) = worst {
                return Ok(BilipschitzCert {
                    radius,
                    worst_pair,
                    worst_ratio,
                });
            }
        }
        radius *= 0.5;
    }
    Err(MetricConformalError::Inconclusive { floor: RADIUS_FLOOR })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bundle::{catalog_bundle, EUCLID_PLANE, INTERVAL_OPEN};

    #[test]
    fn constant_factors_certify_at_the_first_radius() {
        let bundle = catalog_bundle(INTERVAL_OPEN).unwrap();
        let omega = ConformalFactor::constant(2.0);
        let x = Point::d1(INTERVAL_OPEN, 0.4);
        let cert = bilipschitz_probe(&bundle, &omega, &x, 0.5).unwrap();
        assert!(
            (cert.radius - 0.2).abs() < 1e-12,
            "first trial radius is half the boundary distance, got {}",
            cert.radius
        );
        assert!(
            (cert.worst_ratio - 2.0).abs() < 1e-9,
            "constant factor pins every ratio at 2, got {}",
            cert.worst_ratio
        );
    }

    #[test]
    fn steep_factors_need_a_smaller_radius() {
        let bundle = catalog_bundle(INTERVAL_OPEN).unwrap();
        let omega = ConformalFactor::time_only("nomizu", |t| 1.0 / t.min(1.0 - t));
        let x = Point::d1(INTERVAL_OPEN, 0.5);
        let cert = bilipschitz_probe(&bundle, &omega, &x, 0.5).unwrap();
        assert!(
            cert.radius <= 0.1,
            "factor 2 +- 0.5 squeeze near 0.5 needs r <= 0.1, got {}",
            cert.radius
        );
        assert!(
            cert.worst_ratio <= 2.5 && cert.worst_ratio >= 1.5,
            "certified worst ratio must sit in the band, got {}",
            cert.worst_ratio
        );
    }

    #[test]
    fn plane_centers_certify_against_chord_ratios() {
        let bundle = catalog_bundle(EUCLID_PLANE).unwrap();
        let omega = ConformalFactor::from_fn("1+x^2", |p| 1.0 + p.coords[0] * p.coords[0]);
        let x = Point::d2(EUCLID_PLANE, 0.3, -0.2);
        let cert = bilipschitz_probe(&bundle, &omega, &x, 0.2).unwrap();
        let want = 1.09;
        assert!(
            (cert.worst_ratio - want).abs() < 0.2,
            "ratios hover near Omega(x) = {want}, got {}",
            cert.worst_ratio
        );
    }

    #[test]
    fn oversized_eps_is_rejected() {
        let bundle = catalog_bundle(INTERVAL_OPEN).unwrap();
        let omega = ConformalFactor::constant(1.5);
        let x = Point::d1(INTERVAL_OPEN, 0.5);
        for eps in [1.5, 2.0, 0.0, -0.3] {
            assert!(
                matches!(
                    bilipschitz_probe(&bundle, &omega, &x, eps),
                    Err(MetricConformalError::EpsOutOfRange { .. })
                ),
                "eps {eps} must be outside (0, 1.5)"
            );
        }
    }
}
