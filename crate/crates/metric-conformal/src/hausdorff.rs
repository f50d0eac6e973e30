use space_core::num::{adaptive_simpson, aitken_limit, golden_max};
use space_core::{ConformalFactor, Point};

use crate::bundle::LengthSpaceBundle;
use crate::error::MetricConformalError;

/// Fraction of the target diameter each cover cell actually uses.
const FIT: f64 = 0.999;
/// Golden-section iterations when maximizing the factor over a range.
const MAX_ITERS: u32 = 60;
/// Fixed cell count for the reweighted reference side.
const REFERENCE_CELLS: usize = 512;
/// Quadrature tolerance for per-cell factor integrals.
const CELL_TOL: f64 = 1e-10;

/// A closed subinterval of a 1-d bundle, the region whose measures are
/// compared.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MetricInterval {
    pub lo: f64,
    pub hi: f64,
}

impl MetricInterval {
    pub fn new(lo: f64, hi: f64) -> Result<MetricInterval, MetricConformalError> {
        if !(lo <= hi) || !lo.is_finite() || !hi.is_finite() {
            return Err(MetricConformalError::BadRegion(format!(
                "need finite lo <= hi, got [{lo}, {hi}]"
            )));
        }
        Ok(MetricInterval { lo, hi })
    }

    pub fn length(&self) -> f64 {
        self.hi - self.lo
    }
}

/// Two measured sides of the conformal rescaling identity plus their gap.
#[derive(Clone, Debug)]
pub struct MetricMeasureCheck {
    /// Extrapolated s-dimensional measure of the region in the rescaled
    /// metric.
    pub lhs: f64,
    /// Measure of the region with the factor's s-th power as density.
    pub rhs: f64,
    /// Relative gap between the sides.
    pub gap: f64,
    /// Raw covering premeasures behind `lhs`, one per schedule entry.
    pub premeasures: Vec<f64>,
}

fn factor_max(omega: &ConformalFactor, id: &'static str, lo: f64, hi: f64) -> f64 {
    let f = |t: f64| omega.eval(&Point::d1(id, t));
    if hi <= lo {
        return f(lo);
    }
    let (_, max_interior) = golden_max(&f, lo, hi, MAX_ITERS);
    max_interior.max(f(lo)).max(f(hi))
}

/// Covering premeasure of the region at mesh `delta`: cells of rescaled
/// diameter at most `delta` tile the interval, each contributing its
/// conformal length to the s-th power.
fn covering_premeasure(
    bundle: &LengthSpaceBundle,
    omega: &ConformalFactor,
    region: &MetricInterval,
    s: f64,
    delta: f64,
) -> f64 {
    if region.length() == 0.0 {
        return 0.0;
    }
    let id = bundle.id;
    let omega_max = factor_max(omega, id, region.lo, region.hi);
    // Worst-case rescaled cell diameter is omega_max * width, so this
    // cell count keeps every cell under delta after the fit margin.
    let cells = ((omega_max * region.length()) / (delta * FIT)).ceil().max(1.0) as usize;
    let width = region.length() / cells as f64;
    let f = |t: f64| omega.eval(&Point::d1(id, t));
    let mut total = 0.0;
    for i in 0..cells {
        let a = region.lo + width * i as f64;
        let b = (a + width).min(region.hi);
        let diam = adaptive_simpson(&f, a, b, CELL_TOL);
        total += diam.powf(s);
    }
    total
}

/// Compares the s-dimensional measure of `region` in the rescaled metric
/// against the plain measure reweighted by the factor's s-th power.
/// The left side covers the region with intervals of shrinking rescaled
/// diameter over `schedule` and extrapolates; the right side integrates
/// the density on a fixed fine grid. 1-d bundles only; the region must
/// sit inside one component hull.
pub fn metric_hausdorff_conformal_check(
    bundle: &LengthSpaceBundle,
    omega: &ConformalFactor,
    region: &MetricInterval,
    s: f64,
    schedule: &[f64],
) -> Result<MetricMeasureCheck, MetricConformalError> {
    if bundle.dim != 1 {
        return Err(MetricConformalError::UnsupportedBundle(
            "measure comparison needs a 1-d bundle",
        ));
    }
    if !(s > 0.0) || !s.is_finite() {
        return Err(MetricConformalError::BadExponent(s));
    }
    if schedule.is_empty()
        || schedule.windows(2).any(|w| w[1] >= w[0])
        || schedule.iter().any(|&d| !(d > 0.0) || !d.is_finite())
    {
        return Err(MetricConformalError::BadSchedule(schedule.to_vec()));
    }
    if region.length() > 0.0
        && !bundle
            .components()
            .iter()
            .any(|c| c.hull_contains(region.lo) && c.hull_contains(region.hi))
    {
        return Err(MetricConformalError::BadRegion(format!(
            "region [{}, {}] must sit inside one component",
            region.lo, region.hi
        )));
    }
    if region.length() == 0.0 {
        return Ok(MetricMeasureCheck {
            lhs: 0.0,
            rhs: 0.0,
            gap: 0.0,
            premeasures: vec![0.0; schedule.len()],
        });
    }
    let premeasures: Vec<f64> = schedule
        .iter()
        .map(|&delta| covering_premeasure(bundle, omega, region, s, delta))
        .collect();
    let lhs = aitken_limit(&premeasures);
    let id = bundle.id;
    let width = region.length() / REFERENCE_CELLS as f64;
    let rhs: f64 = (0..REFERENCE_CELLS)
        .map(|i| {
            let mid = region.lo + width * (i as f64 + 0.5);
            omega.eval(&Point::d1(id, mid)).powf(s) * width.powf(s)
        })
        .sum();
    let scale = lhs.abs().max(rhs.abs()).max(f64::MIN_POSITIVE);
    Ok(MetricMeasureCheck {
        lhs,
        rhs,
        gap: (lhs - rhs).abs() / scale,
        premeasures,
    })
}
