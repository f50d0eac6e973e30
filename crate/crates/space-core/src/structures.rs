use std::sync::Arc;

use serde::Serialize;

use crate::error::SpaceError;
use crate::ext::ExtReal;
use crate::point::Point;

type PairPred = Arc<dyn Fn(&Point, &Point) -> bool + Send + Sync>;

/// Metric evaluator `d(x, y)`. Must be pure; concurrent calls are expected.
#[derive(Clone)]
pub struct MetricStructure {
    eval: Arc<dyn Fn(&Point, &Point) -> f64 + Send + Sync>,
}

impl MetricStructure {
    pub fn new(f: impl Fn(&Point, &Point) -> f64 + Send + Sync + 'static) -> MetricStructure {
        MetricStructure { eval: Arc::new(f) }
    }

    pub fn dist(&self, x: &Point, y: &Point) -> f64 {
        (self.eval)(x, y)
    }
}

/// The pair of order relations: chronological (strict) and causal (weak).
#[derive(Clone)]
pub struct CausalStructure {
    chron: PairPred,
    causal: PairPred,
}

impl CausalStructure {
    pub fn new(
        chron: impl Fn(&Point, &Point) -> bool + Send + Sync + 'static,
        causal: impl Fn(&Point, &Point) -> bool + Send + Sync + 'static,
    ) -> CausalStructure {
        CausalStructure {
            chron: Arc::new(chron),
            causal: Arc::new(causal),
        }
    }

    pub fn chronologically_related(&self, x: &Point, y: &Point) -> bool {
        (self.chron)(x, y)
    }

    pub fn causally_related(&self, x: &Point, y: &Point) -> bool {
        (self.causal)(x, y)
    }
}

/// Time separation evaluator with values in the extended nonnegative reals.
#[derive(Clone)]
pub struct TimeSeparation {
    eval: Arc<dyn Fn(&Point, &Point) -> ExtReal + Send + Sync>,
}

impl TimeSeparation {
    pub fn new(f: impl Fn(&Point, &Point) -> ExtReal + Send + Sync + 'static) -> TimeSeparation {
        TimeSeparation { eval: Arc::new(f) }
    }

    pub fn eval(&self, x: &Point, y: &Point) -> ExtReal {
        (self.eval)(x, y)
    }
}

/// Declared structural properties of a space. These are inputs (certified by
/// the space's construction), not computed facts.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct SpaceFlags {
    pub intrinsic: bool,
    pub quasi_strongly_causal: bool,
    pub causally_path_connected: bool,
    pub locally_causally_closed: bool,
}

/// A space `(X, d, chron, causal, tau)` given by evaluators over one point set.
#[derive(Clone)]
pub struct LorentzianPreLengthSpace {
    pub id: &'static str,
    pub dimension: usize,
    pub metric: MetricStructure,
    pub causal: CausalStructure,
    pub time_sep: TimeSeparation,
    pub flags: SpaceFlags,
    contains: Arc<dyn Fn(&Point) -> bool + Send + Sync>,
    sampler: Arc<dyn Fn(u64) -> Point + Send + Sync>,
}

impl LorentzianPreLengthSpace {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        id: &'static str,
        dimension: usize,
        metric: MetricStructure,
        causal: CausalStructure,
        time_sep: TimeSeparation,
        flags: SpaceFlags,
        contains: impl Fn(&Point) -> bool + Send + Sync + 'static,
        sampler: impl Fn(u64) -> Point + Send + Sync + 'static,
    ) -> LorentzianPreLengthSpace {
        LorentzianPreLengthSpace {
            id,
            dimension,
            metric,
            causal,
            time_sep,
            flags,
            contains: Arc::new(contains),
            sampler: Arc::new(sampler),
        }
    }

    pub fn dist(&self, x: &Point, y: &Point) -> f64 {
        self.metric.dist(x, y)
    }

    pub fn chronologically_related(&self, x: &Point, y: &Point) -> bool {
        self.causal.chronologically_related(x, y)
    }

    pub fn causally_related(&self, x: &Point, y: &Point) -> bool {
        self.causal.causally_related(x, y)
    }

    pub fn tau(&self, x: &Point, y: &Point) -> ExtReal {
        self.time_sep.eval(x, y)
    }

    pub fn contains(&self, p: &Point) -> bool {
        p.coords.len() == self.dimension && (self.contains)(p)
    }

    /// Checks id, dimension, and domain membership.
    pub fn validate_point(&self, p: &Point) -> Result<(), SpaceError> {
        if p.space_id != self.id {
            return Err(SpaceError::MixedSpaces(self.id, p.space_id));
        }
        if p.coords.len() != self.dimension {
            return Err(SpaceError::DimensionMismatch {
                space: self.id,
                want: self.dimension,
                got: p.coords.len(),
            });
        }
        if !(self.contains)(p) {
            return Err(SpaceError::OutsideDomain {
                space: self.id,
                coords: p.coords.clone(),
                reason: "coordinates violate the space's domain".to_string(),
            });
        }
        Ok(())
    }

    /// Deterministic point stream for sampling probes: index `k` always
    /// yields the same in-domain point.
    pub fn sample_point(&self, k: u64) -> Point {
        (self.sampler)(k)
    }
}
