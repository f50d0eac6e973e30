#![doc = r#"
Curves, partitions, and the two variational length functionals.

A `Curve` is a continuous map from a parameter interval into a space,
evaluated pointwise. Lengths come in two flavors with opposite variational
behavior:

* `tau_length`: infimum over partitions of the sum of time separations;
  the partition sums are nonincreasing under refinement (reverse triangle),
  so dyadic refinement converges from above;
* `d_length`: supremum over partitions of the sum of metric distances;
  the sums are nondecreasing under refinement (triangle inequality), so
  dyadic refinement converges from below, and a configurable ceiling
  detects divergence (curves of infinite metric length).

`tau_variation` / `d_variation` expose single-partition sums, and
`causal_check` verifies that a curve respects the causal (or chronological)
relation between consecutive samples.
"#]

mod curve;
mod error;
mod json;
mod length;
mod partition;
mod variation;

pub use curve::{Curve, CurveKind};
pub use error::CurveError;
pub use json::curve_from_json;
pub use length::{d_length, tau_length, DLengthResult, TauLengthResult};
pub use partition::Partition;
pub use variation::{causal_check, d_variation, is_causal, tau_variation, CausalCheck};
