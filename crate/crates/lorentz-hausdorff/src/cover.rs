use crate::error::HausdorffError;
use crate::region::Region;
use serde::{Deserialize, Serialize};
use space_core::num::{splitmix64, unit_pair};
use space_core::{ExtReal, LorentzianPreLengthSpace, Point};

/// Null coordinates of a planar point: `u = t - x`, `v = t + x`. Causal
/// diamonds are axis-aligned rectangles in these coordinates and the time
/// separation of a diamond's tips is `sqrt(du * dv)`.
pub fn null_coords(p: &Point) -> (f64, f64) {
    (p.t() - p.x(), p.t() + p.x())
}

pub fn point_from_null(space_id: &'static str, u: f64, v: f64) -> Point {
    Point::d2(space_id, (u + v) / 2.0, (v - u) / 2.0)
}

/// Covers may carry null slabs (tips causally but not chronologically
/// related): they contribute nothing to any premeasure, so their count is
/// capped to keep covers finite-information.
pub const DEGENERATE_DIAMOND_CAP: usize = 512;

/// Shrink factor keeping generated tiles strictly under the diameter bound.
const FIT: f64 = 0.999;

/// Causal slack for the coverage check: grid arithmetic can land a sample
/// a few ulps past a diamond edge, so a sample also counts as covered when
/// it sits inside a diamond inflated by this much in time.
const COVERAGE_EPS: f64 = 1e-9;

/// A delta-cover of a region by causal diamonds.
#[derive(Clone, Debug)]
pub struct DiamondCover {
    pub diamonds: Vec<(Point, Point)>,
    pub delta: f64,
}

impl DiamondCover {
    /// Largest tip distance over the cover's diamonds. On the flat planar
    /// spaces this is exactly the largest diamond d-diameter: the tips of
    /// a diamond realize its diameter.
    pub fn max_tip_distance(&self, space: &LorentzianPreLengthSpace) -> f64 {
        self.diamonds
            .iter()
            .map(|(p, q)| space.dist(p, q))
            .fold(0.0, f64::max)
    }

    /// Checks the cover invariants: positive delta, every pair causal,
    /// every diameter strictly under delta, degenerate diamonds within the
    /// cap, and coverage of the region on a dense deterministic sample.
    pub fn validate(
        &self,
        space: &LorentzianPreLengthSpace,
        region: &Region,
        samples_per_axis: usize,
    ) -> Result<(), HausdorffError> {
        if !(self.delta > 0.0) || !self.delta.is_finite() {
            return Err(HausdorffError::BadDelta(self.delta));
        }
        let mut degenerate = 0;
        for (index, (p, q)) in self.diamonds.iter().enumerate() {
            if !space.causally_related(p, q) {
                return Err(HausdorffError::NotADiamond { index });
            }
            if space.tau(p, q) == ExtReal::ZERO {
                degenerate += 1;
            }
            let diameter = space.dist(p, q);
            if diameter >= self.delta {
                return Err(HausdorffError::DiameterExceeded {
                    index,
                    diameter,
                    delta: self.delta,
                });
            }
        }
        if degenerate > DEGENERATE_DIAMOND_CAP {
            return Err(HausdorffError::TooManyDegenerate {
                count: degenerate,
                cap: DEGENERATE_DIAMOND_CAP,
            });
        }
        for r in region.sample_points(space, samples_per_axis) {
            let covered = self
                .diamonds
                .iter()
                .any(|(p, q)| space.causally_related(p, &r) && space.causally_related(&r, q))
                || self.diamonds.iter().any(|(p, q)| {
                    let p_lo = Point::d2(space.id, p.t() - COVERAGE_EPS, p.x());
                    let q_hi = Point::d2(space.id, q.t() + COVERAGE_EPS, q.x());
                    space.causally_related(&p_lo, &r) && space.causally_related(&r, &q_hi)
                });
            if !covered {
                return Err(HausdorffError::CoverageGap { t: r.t(), x: r.x() });
            }
        }
        Ok(())
    }
}

/// Cover generation recipe: regular null-coordinate tilings at each aspect
/// ratio (`dv/du` of a tile), the aligned grid plus `jitters` seeded
/// origin shifts per aspect. The cheapest valid candidate wins; ties go to
/// the earliest candidate.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CoverStrategy {
    pub aspects: Vec<f64>,
    pub jitters: usize,
    pub seed: u64,
}

impl CoverStrategy {
    pub fn standard() -> CoverStrategy {
        CoverStrategy {
            aspects: vec![1.0, 0.5, 2.0, 0.25, 4.0],
            jitters: 3,
            seed: 0x5D1A,
        }
    }
}

impl Default for CoverStrategy {
    fn default() -> Self {
        CoverStrategy::standard()
    }
}

/// One generated tiling, in candidate order.
#[derive(Debug)]
pub(crate) struct Candidate {
    pub cells: Vec<(Point, Point)>,
}

/// Generates the candidate covers for a nonempty region. Every returned
/// candidate stays within the diamond budget and inside the space domain;
/// when none does, the error reports how close the search came.
pub(crate) fn tiling_candidates(
    space: &LorentzianPreLengthSpace,
    region: &Region,
    delta: f64,
    strategy: &CoverStrategy,
    budget: usize,
) -> Result<Vec<Candidate>, HausdorffError> {
    let (u0, v0, u1, v1) = region
        .bounds_uv(space)
        .expect("tiling_candidates needs a nonempty region");
    let mut candidates = Vec::new();
    let mut needed = usize::MAX;
    let mut out_of_domain = 0usize;
    for (ai, &aspect) in strategy.aspects.iter().enumerate() {
        assert!(
            aspect > 0.0 && aspect.is_finite(),
            "aspect ratio must be positive and finite, got {aspect}"
        );
        let du_cap = delta * FIT * (2.0 / (1.0 + aspect * aspect)).sqrt();
        let dv_cap = aspect * du_cap;
        let ku = tile_count(u1 - u0, du_cap);
        let kv = tile_count(v1 - v0, dv_cap);
        let du = (u1 - u0) / ku as f64;
        let dv = (v1 - v0) / kv as f64;
        for jitter in 0..=strategy.jitters {
            let (shift_u, shift_v) = if jitter == 0 {
                (0.0, 0.0)
            } else {
                unit_pair(splitmix64(strategy.seed ^ (ai as u64) << 8), jitter as u64)
            };
            let (ou, nu) = shifted_axis(u0, du, ku, shift_u);
            let (ov, nv) = shifted_axis(v0, dv, kv, shift_v);
            let mut cells = Vec::new();
            let mut in_domain = true;
            'grid: for i in 0..nu {
                let (cu0, cu1) = (ou + du * i as f64, ou + du * (i + 1) as f64);
                for j in 0..nv {
                    let (cv0, cv1) = (ov + dv * j as f64, ov + dv * (j + 1) as f64);
                    if !region.intersects_uv(cu0, cv0, cu1, cv1) {
                        continue;
                    }
                    let p = point_from_null(space.id, cu0, cv0);
                    let q = point_from_null(space.id, cu1, cv1);
                    if !space.contains(&p) || !space.contains(&q) {
                        in_domain = false;
                        break 'grid;
                    }
                    cells.push((p, q));
                }
            }
            if !in_domain {
                out_of_domain += 1;
                continue;
            }
            if cells.len() > budget {
                needed = needed.min(cells.len());
                continue;
            }
            candidates.push(Candidate { cells });
        }
    }
    if candidates.is_empty() {
        return Err(HausdorffError::NoValidCover {
            budget,
            needed: if needed == usize::MAX { 0 } else { needed },
            out_of_domain,
        });
    }
    Ok(candidates)
}

/// Tiles needed to span `extent` at step `cap`; degenerate extents still
/// get one (null-slab) tile.
fn tile_count(extent: f64, cap: f64) -> usize {
    if extent <= 0.0 {
        return 1;
    }
    (extent / cap).ceil().max(1.0) as usize
}

/// Grid start and tile count after shifting the aligned grid left by a
/// `shift` fraction of one tile; the extra tile restores coverage of the
/// right edge. Zero-step axes cannot shift.
fn shifted_axis(start: f64, step: f64, tiles: usize, shift: f64) -> (f64, usize) {
    if shift == 0.0 || step == 0.0 {
        (start, tiles)
    } else {
        (start - shift * step, tiles + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use space_core::catalog_space;

    #[test]
    fn null_coords_round_trip() {
        let space = catalog_space("minkowski2", &serde_json::Map::new()).expect("catalog space");
        let p = Point::d2(space.id, 0.3, -0.7);
        let (u, v) = null_coords(&p);
        let back = point_from_null(space.id, u, v);
        assert!(
            space.dist(&p, &back) < 1e-12,
            "round trip drifted: ({}, {}) vs ({}, {})",
            p.t(),
            p.x(),
            back.t(),
            back.x()
        );
        assert!(
            (u - 1.0).abs() < 1e-15 && (v + 0.4).abs() < 1e-15,
            "wrong null coordinates ({u}, {v})"
        );
    }

    #[test]
    fn tip_distance_is_the_diameter() {
        let space = catalog_space("minkowski2", &serde_json::Map::new()).expect("catalog space");
        let p = point_from_null(space.id, 0.0, 0.0);
        let q = point_from_null(space.id, 0.3, 0.1);
        let cover = DiamondCover {
            diamonds: vec![(p.clone(), q.clone())],
            delta: 1.0,
        };
        let want = ((0.3f64 * 0.3 + 0.1 * 0.1) / 2.0).sqrt();
        let got = cover.max_tip_distance(&space);
        assert!(
            (got - want).abs() < 1e-15,
            "tip distance {got} is not the diameter {want}"
        );
        let corner_a = point_from_null(space.id, 0.0, 0.1);
        let corner_b = point_from_null(space.id, 0.3, 0.0);
        assert!(
            (space.dist(&corner_a, &corner_b) - want).abs() < 1e-15,
            "the other diagonal should match too"
        );
    }

    #[test]
    fn aligned_tiling_covers_a_diamond_exactly() {
        let space = catalog_space("minkowski2", &serde_json::Map::new()).expect("catalog space");
        let region = Region::Diamond {
            p: Point::d2(space.id, 0.0, 0.0),
            q: Point::d2(space.id, 1.0, 0.0),
        };
        let strategy = CoverStrategy {
            aspects: vec![1.0],
            jitters: 0,
            seed: 0,
        };
        let candidates =
            tiling_candidates(&space, &region, 0.1, &strategy, 10_000).expect("candidates");
        assert_eq!(candidates.len(), 1, "one aligned candidate");
        let cells = &candidates[0].cells;
        let k = (1.0 / (0.1 * FIT)).ceil() as usize;
        assert_eq!(cells.len(), k * k, "aligned grid should keep every cell");
        let cover = DiamondCover {
            diamonds: cells.clone(),
            delta: 0.1,
        };
        cover
            .validate(&space, &region, 33)
            .expect("aligned tiling is a valid cover");
    }

    #[test]
    fn budget_exhaustion_reports_the_need() {
        let space = catalog_space("minkowski2", &serde_json::Map::new()).expect("catalog space");
        let region = Region::Diamond {
            p: Point::d2(space.id, 0.0, 0.0),
            q: Point::d2(space.id, 1.0, 0.0),
        };
        let strategy = CoverStrategy {
            aspects: vec![1.0],
            jitters: 0,
            seed: 0,
        };
        let err = tiling_candidates(&space, &region, 0.1, &strategy, 5).unwrap_err();
        match err {
            HausdorffError::NoValidCover { needed, .. } => {
                assert_eq!(needed, 121, "cheapest candidate size");
            }
            other => panic!("wrong error: {other}"),
        }
    }

    #[test]
    fn strip_boundary_region_fails_into_domain_error() {
        let space = catalog_space("minkowski_strip", &serde_json::Map::new()).expect("catalog space");
        let region = Region::Box {
            t0: 0.001,
            t1: 0.999,
            x0: -0.1,
            x1: 0.1,
        };
        let strategy = CoverStrategy::standard();
        let err = tiling_candidates(&space, &region, 0.2, &strategy, 100_000).unwrap_err();
        match err {
            HausdorffError::NoValidCover { out_of_domain, .. } => {
                assert!(out_of_domain > 0, "tiles must have left the strip");
            }
            other => panic!("wrong error: {other}"),
        }
    }
}
