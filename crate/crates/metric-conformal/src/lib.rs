//! Conformal rescaling on the metric side: weighted variation and
//! length, rescaled distances under three strategies, speed checks,
//! completion factors from compact-ball radii, measure comparison, and
//! local bilipschitz certificates.

pub mod bilipschitz;
pub mod bundle;
pub mod completion;
pub mod distance;
pub mod error;
pub mod hausdorff;
pub mod length;
pub mod speed;

pub use bilipschitz::{bilipschitz_probe, BilipschitzCert};
pub use bundle::{
    catalog_bundle, catalog_bundle_names, Component1d, LengthSpaceBundle, EUCLID_PLANE,
    INTERVAL_CLOSED, INTERVAL_OPEN, TWO_INTERVALS,
};
pub use completion::{
    completeness_probe, completion_factor, nomizu_ozeki_rho, CompletionFactor, ProbeReport,
    ProbeVerdict,
};
pub use distance::{d_omega, DOmegaResult, DOmegaStrategy};
pub use error::MetricConformalError;
pub use hausdorff::{metric_hausdorff_conformal_check, MetricInterval, MetricMeasureCheck};
pub use length::{
    metric_conformal_length, metric_conformal_variation, ConformalLength, DIVERGENCE_CEILING,
};
pub use speed::{
    conformal_speed_check, metric_speed, SpeedCheck, SpeedEstimate, DEFAULT_H_SCHEDULE,
};
