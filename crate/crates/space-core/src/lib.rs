#![doc = r#"
Core vocabulary for synthetic causal geometry.

A space bundles four ingredients over one point set: a metric `d`, a
chronological relation (strictly before), a causal relation (weakly before),
and a time separation `tau` with values in the extended nonnegative reals.
The crate ships:

* `ExtReal`, extended-real arithmetic where `0 * inf` is rejected instead of
  silently defined;
* `Point`, ambient coordinates tagged with the owning space;
* `LorentzianPreLengthSpace`, the evaluator bundle, plus `ConformalFactor`
  with its product/reciprocal algebra;
* `catalog_space`, seven ready-made spaces used throughout the workspace,
  including three counterexample spaces with exact closed-form relations;
* `push_up_check`, a sampling probe for the causal bookkeeping laws
  (push-up, reverse triangle, sign agreement of `tau` with chronology).

Numerical helpers shared by the downstream crates (adaptive Simpson
quadrature, golden-section extremum polish, deterministic hash sampling)
live in `num`.
"#]

mod catalog;
mod checks;
mod conformal;
mod error;
mod ext;
pub mod num;
mod point;
mod structures;

pub use catalog::{
    catalog_names, catalog_space, space_from_json, FUNNEL_X, FUNNEL_Y, IMPRISON_W, INFINITY_LINE,
    MINKOWSKI2, MINKOWSKI_STRIP, TAU_LOG_LINE,
};
pub use checks::{push_up_check, CausalLaw, PushUpReport, PushUpViolation};
pub use conformal::{ConformalFactor, FactorForm};
pub use error::{ExtRealError, SpaceError};
pub use ext::{BoundKind, ExtReal};
pub use point::Point;
pub use structures::{
    CausalStructure, LorentzianPreLengthSpace, MetricStructure, SpaceFlags, TimeSeparation,
};
