use std::sync::Arc;

use space_core::{MetricStructure, Point};

use crate::error::MetricConformalError;

pub const INTERVAL_OPEN: &str = "interval_open";
pub const INTERVAL_CLOSED: &str = "interval_closed";
pub const EUCLID_PLANE: &str = "euclid_plane";
pub const TWO_INTERVALS: &str = "two_intervals";

/// One maximal interval of a 1-d bundle. `closed` says whether the two
/// endpoints belong to the space.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Component1d {
    pub lo: f64,
    pub hi: f64,
    pub closed: bool,
}

impl Component1d {
    /// Closed-hull membership, used to assign points to components.
    pub fn hull_contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    /// Membership respecting the open or closed endpoints.
    pub fn contains(&self, x: f64) -> bool {
        if self.closed {
            self.lo <= x && x <= self.hi
        } else {
            self.lo < x && x < self.hi
        }
    }
}

/// A metric length space packaged with the two oracles the conformal
/// machinery needs: whether the metric is intrinsic, and which closed
/// balls are compact.
#[derive(Clone)]
pub struct LengthSpaceBundle {
    pub id: &'static str,
    pub dim: usize,
    pub metric: MetricStructure,
    pub intrinsic_flag: bool,
    contains: Arc<dyn Fn(&Point) -> bool + Send + Sync>,
    compact_ball: Arc<dyn Fn(&Point, f64) -> bool + Send + Sync>,
    components: Vec<Component1d>,
}

impl std::fmt::Debug for LengthSpaceBundle {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("LengthSpaceBundle")
            .field("id", &self.id)
            .field("dim", &self.dim)
            .field("intrinsic_flag", &self.intrinsic_flag)
            .field("components", &self.components)
            .finish_non_exhaustive()
    }
}

impl LengthSpaceBundle {
    pub fn new(
        id: &'static str,
        dim: usize,
        metric: MetricStructure,
        intrinsic_flag: bool,
        contains: impl Fn(&Point) -> bool + Send + Sync + 'static,
        compact_ball: impl Fn(&Point, f64) -> bool + Send + Sync + 'static,
    ) -> LengthSpaceBundle {
        LengthSpaceBundle {
            id,
            dim,
            metric,
            intrinsic_flag,
            contains: Arc::new(contains),
            compact_ball: Arc::new(compact_ball),
            components: Vec::new(),
        }
    }

    /// Declares the 1-d component intervals (used by graph nets and
    /// boundary-aware sampling).
    pub fn with_components(mut self, components: Vec<Component1d>) -> LengthSpaceBundle {
        self.components = components;
        self
    }

    /// The same domain and oracles under a different metric. Points and
    /// curves keep validating against the original id, which is what the
    /// conformal-composition law needs.
    pub fn with_metric(&self, metric: MetricStructure) -> LengthSpaceBundle {
        let mut out = self.clone();
        out.metric = metric;
        out
    }

    pub fn dist(&self, x: &Point, y: &Point) -> f64 {
        self.metric.dist(x, y)
    }

    pub fn contains(&self, p: &Point) -> bool {
        p.space_id == self.id && p.coords.len() == self.dim && (self.contains)(p)
    }

    /// Whether the closed ball around `center` of the given radius is
    /// compact, as declared by the bundle's oracle.
    pub fn compact_ball(&self, center: &Point, radius: f64) -> bool {
        (self.compact_ball)(center, radius)
    }

    pub fn components(&self) -> &[Component1d] {
        &self.components
    }

    /// The component whose closed hull holds the 1-d point, if any.
    pub fn component_of(&self, x: f64) -> Option<&Component1d> {
        self.components.iter().find(|c| c.hull_contains(x))
    }

    pub fn validate_point(&self, p: &Point) -> Result<(), MetricConformalError> {
        if p.space_id != self.id {
            return Err(MetricConformalError::WrongSpace {
                expected: self.id,
                got: p.space_id,
            });
        }
        if p.coords.len() != self.dim {
            return Err(MetricConformalError::BadDimension {
                expected: self.dim,
                got: p.coords.len(),
            });
        }
        if !(self.contains)(p) {
            return Err(MetricConformalError::OutsideDomain {
                coords: p.coords.clone(),
            });
        }
        Ok(())
    }

    /// A handful of interior points, one batch per component, used to
    /// validate oracles and spot-check invariants.
    pub fn probe_points(&self) -> Vec<Point> {
        if self.dim == 1 {
            let mut out = Vec::new();
            for c in &self.components {
                for k in 1..4 {
                    let x = c.lo + (c.hi - c.lo) * k as f64 / 4.0;
                    out.push(Point::d1(self.id, x));
                }
            }
            out
        } else {
            vec![
                Point::d2(self.id, 0.0, 0.0),
                Point::d2(self.id, 0.3, 0.4),
                Point::d2(self.id, -1.0, 2.0),
            ]
        }
    }
}

fn interval_metric() -> MetricStructure {
    MetricStructure::new(|x: &Point, y: &Point| (x.coords[0] - y.coords[0]).abs())
}

fn open_interval_ball(components: Vec<Component1d>) -> impl Fn(&Point, f64) -> bool {
    move |p: &Point, r: f64| {
        let x = p.coords[0];
        match components.iter().find(|c| c.hull_contains(x)) {
            Some(c) => r < (x - c.lo).min(c.hi - x),
            None => false,
        }
    }
}

/// Builds a bundle from the catalog: `interval_open` is (0,1) with the
/// line metric, `interval_closed` is [0,1], `euclid_plane` is the
/// Euclidean plane, and `two_intervals` is (0,1) together with (2,3),
/// carrying the ambient line metric, which across the gap is not a path
/// length (so the bundle is not intrinsic).
pub fn catalog_bundle(name: &str) -> Result<LengthSpaceBundle, MetricConformalError> {
    match name {
        INTERVAL_OPEN => {
            let comps = vec![Component1d {
                lo: 0.0,
                hi: 1.0,
                closed: false,
            }];
            let ball = open_interval_ball(comps.clone());
            Ok(LengthSpaceBundle::new(
                INTERVAL_OPEN,
                1,
                interval_metric(),
                true,
                |p: &Point| 0.0 < p.coords[0] && p.coords[0] < 1.0,
                ball,
            )
            .with_components(comps))
        }
        INTERVAL_CLOSED => {
            let comps = vec![Component1d {
                lo: 0.0,
                hi: 1.0,
                closed: true,
            }];
            Ok(LengthSpaceBundle::new(
                INTERVAL_CLOSED,
                1,
                interval_metric(),
                true,
                |p: &Point| (0.0..=1.0).contains(&p.coords[0]),
                |_, _| true,
            )
            .with_components(comps))
        }
        EUCLID_PLANE => Ok(LengthSpaceBundle::new(
            EUCLID_PLANE,
            2,
            MetricStructure::new(|x: &Point, y: &Point| {
                let dx = x.coords[0] - y.coords[0];
                let dy = x.coords[1] - y.coords[1];
                dx.hypot(dy)
            }),
            true,
            |p: &Point| p.coords.iter().all(|c| c.is_finite()),
            |_, _| true,
        )),
        TWO_INTERVALS => {
            let comps = vec![
                Component1d {
                    lo: 0.0,
                    hi: 1.0,
                    closed: false,
                },
                Component1d {
                    lo: 2.0,
                    hi: 3.0,
                    closed: false,
                },
            ];
            let ball = open_interval_ball(comps.clone());
            Ok(LengthSpaceBundle::new(
                TWO_INTERVALS,
                1,
                interval_metric(),
                false,
                |p: &Point| {
                    let x = p.coords[0];
                    (0.0 < x && x < 1.0) || (2.0 < x && x < 3.0)
                },
                ball,
            )
            .with_components(comps))
        }
        other => Err(MetricConformalError::UnknownBundle(other.to_string())),
    }
}

pub fn catalog_bundle_names() -> &'static [&'static str] {
    &[INTERVAL_OPEN, INTERVAL_CLOSED, EUCLID_PLANE, TWO_INTERVALS]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_builds_every_listed_bundle() {
        for name in catalog_bundle_names() {
            let b = catalog_bundle(name).expect("catalog bundle");
            assert_eq!(b.id, *name, "bundle id must echo the catalog name");
            for p in b.probe_points() {
                assert!(b.contains(&p), "{name} probe point {:?} must be interior", p.coords);
            }
        }
        assert!(matches!(
            catalog_bundle("hyperbolic_disk"),
            Err(MetricConformalError::UnknownBundle(_))
        ));
    }

    #[test]
    fn open_interval_rejects_boundary_and_wrong_space() {
        let b = catalog_bundle(INTERVAL_OPEN).unwrap();
        assert!(b.validate_point(&Point::d1(INTERVAL_OPEN, 0.5)).is_ok());
        assert!(matches!(
            b.validate_point(&Point::d1(INTERVAL_OPEN, 0.0)),
            Err(MetricConformalError::OutsideDomain { .. })
        ));
        assert!(matches!(
            b.validate_point(&Point::d1(INTERVAL_CLOSED, 0.5)),
            Err(MetricConformalError::WrongSpace { .. })
        ));
        assert!(matches!(
            b.validate_point(&Point::d2(INTERVAL_OPEN, 0.5, 0.5)),
            Err(MetricConformalError::BadDimension { .. })
        ));
    }

    #[test]
    fn compact_balls_follow_the_boundary_distance() {
        let b = catalog_bundle(INTERVAL_OPEN).unwrap();
        let p = Point::d1(INTERVAL_OPEN, 0.3);
        assert!(b.compact_ball(&p, 0.29), "radius below the margin is compact");
        assert!(!b.compact_ball(&p, 0.3), "radius at the margin leaks out of (0,1)");
        let c = catalog_bundle(INTERVAL_CLOSED).unwrap();
        assert!(c.compact_ball(&Point::d1(INTERVAL_CLOSED, 0.5), 1e9));
    }

    #[test]
    fn two_intervals_is_not_intrinsic_and_has_two_components() {
        let b = catalog_bundle(TWO_INTERVALS).unwrap();
        assert!(!b.intrinsic_flag);
        assert_eq!(b.components().len(), 2);
        assert!(b.contains(&Point::d1(TWO_INTERVALS, 2.5)));
        assert!(!b.contains(&Point::d1(TWO_INTERVALS, 1.5)));
        let p = Point::d1(TWO_INTERVALS, 0.4);
        let q = Point::d1(TWO_INTERVALS, 2.9);
        assert!((b.dist(&p, &q) - 2.5).abs() < 1e-15, "ambient line distance");
    }
}
