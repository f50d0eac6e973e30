use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use space_core::{LorentzianPreLengthSpace, Point};

use crate::causal_graph::{CausalGraph, LinkRule};
use crate::error::GraphError;

/// An axis-aligned sampling window in the `(t, x)` plane.
#[derive(Clone, Copy, Debug)]
pub struct BoxRegion {
    pub t0: f64,
    pub t1: f64,
    pub x0: f64,
    pub x1: f64,
}

impl BoxRegion {
    pub fn new(t0: f64, t1: f64, x0: f64, x1: f64) -> Result<BoxRegion, GraphError> {
        if !(t0 < t1) || !(x0 < x1) || [t0, t1, x0, x1].iter().any(|v| !v.is_finite()) {
            return Err(GraphError::RegionInvalid(format!(
                "box t in [{t0}, {t1}], x in [{x0}, {x1}]"
            )));
        }
        Ok(BoxRegion { t0, t1, x0, x1 })
    }
}

/// Scatters `n` uniform points of the box into the space and links them.
/// Deterministic for a given seed; points outside the space's domain are
/// rejected, and a region rejecting nearly everything is an error.
pub fn sprinkle(
    space: &LorentzianPreLengthSpace,
    region: BoxRegion,
    n: usize,
    seed: u64,
    link_rule: LinkRule,
) -> Result<CausalGraph, GraphError> {
    sprinkle_anchored(space, region, n, seed, link_rule, &[])
}

/// `sprinkle` with extra fixed nodes (query endpoints, usually) merged
/// into the cloud before linking. Anchors must lie in the space's domain
/// but may sit outside the box.
pub fn sprinkle_anchored(
    space: &LorentzianPreLengthSpace,
    region: BoxRegion,
    n: usize,
    seed: u64,
    link_rule: LinkRule,
    anchors: &[Point],
) -> Result<CausalGraph, GraphError> {
    if space.dimension != 2 {
        return Err(GraphError::RegionInvalid(format!(
            "box sprinkling needs a 2-d space, `{}` has dimension {}",
            space.id, space.dimension
        )));
    }
    if n + anchors.len() < 2 {
        return Err(GraphError::RegionInvalid(
            "need at least 2 nodes overall".into(),
        ));
    }
    for p in anchors {
        space
            .validate_point(p)
            .map_err(|e| GraphError::RegionInvalid(format!("anchor rejected: {e}")))?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut points: Vec<Point> = anchors.to_vec();
    let budget = 1000 + 200 * n;
    let mut attempts = 0;
    let mut accepted = 0;
    while accepted < n {
        if attempts >= budget {
            return Err(GraphError::RegionInvalid(format!(
                "rejection sampling stalled: {accepted} of {n} accepted after {attempts} draws"
            )));
        }
        attempts += 1;
        let t = rng.gen_range(region.t0..region.t1);
        let x = rng.gen_range(region.x0..region.x1);
        let p = Point::d2(space.id, t, x);
        if space.contains(&p) {
            points.push(p);
            accepted += 1;
        }
    }
    CausalGraph::from_space(space, points, link_rule)
}
