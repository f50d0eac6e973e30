#![doc = r#"Lorentzian Hausdorff premeasures and measures on the flat planar
spaces: delta-covers by causal diamonds, dimension-weighted diamond sums,
limit extrapolation over a shrinking delta schedule, and the conformal
change-of-measure check.

Covers live in null coordinates `u = t - x`, `v = t + x`, where a causal
diamond is an axis-aligned rectangle, its time separation is
`sqrt(du * dv)`, and its d-diameter is the Euclidean distance between its
tips. Cover generation tiles the target region at several tile aspect
ratios plus seeded grid shifts and keeps the cheapest valid cover, so
every reported premeasure is an upper bound on the true infimum.
"#]

mod cover;
mod error;
mod export;
mod measure;
mod region;

pub use cover::{
    null_coords, point_from_null, CoverStrategy, DiamondCover, DEGENERATE_DIAMOND_CAP,
};
pub use error::HausdorffError;
pub use export::estimate_csv;
pub use measure::{
    conformal_measure_check, conformal_premeasure, hausdorff_measure, hausdorff_premeasure,
    omega_s, ConformalMeasureCheck, HausdorffEstimate, PremeasureResult, COVER_SAMPLES_PER_AXIS,
    MONOTONE_SLACK,
};
pub use region::{region_from_json, region_to_json, Region};
